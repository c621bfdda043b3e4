"""Independent sympy oracle for the frozen values in the unit tests.

Run with `python3 tests/oracle/derive.py`; it prints the values that the C++ tests hard-code.
"""

import functools

import sympy as sp

v = sp.symbols("v", positive=True)
x = sp.symbols("x")
q = v**2


def qnum(n, base=q):
    return sp.cancel((base**n - base**-n) / (base - 1 / base))


def laurent(expr):
    """Coefficients of a Laurent polynomial in v as {exponent: coefficient}."""
    expr = sp.expand(sp.cancel(expr))
    low = min(sp.Poly(sp.expand(expr * v**64), v).monoms())[0] - 64
    poly = sp.Poly(sp.expand(expr * v**-low), v)
    return {m[0] + low: c for m, c in zip(poly.monoms(), poly.coeffs())}


def cyclotomic_inverse(coeffs, order):
    """Inverse of sum c_k z^k in Q[z]/Phi_order, as coefficients of 1, z, z^2, ..."""
    phi = sp.Poly(sp.cyclotomic_poly(order, x), x)
    a = sp.Poly(sum(c * x**k for k, c in enumerate(coeffs)), x)
    inv = sp.invert(a.as_expr(), phi.as_expr(), x)
    p = sp.Poly(inv, x)
    return [p.coeff_monomial(x**k) for k in range(phi.degree())]


def positive_roots(kind, n):
    dim = n + 1 if kind == "A" else n
    e = lambda i: tuple(1 if j == i else 0 for j in range(dim))
    add = lambda a, b, s=1: tuple(p + s * r for p, r in zip(a, b))
    roots = [add(e(i), e(j), -1) for i in range(dim) for j in range(i + 1, dim)]
    if kind in "BCD":
        roots += [add(e(i), e(j)) for i in range(n) for j in range(i + 1, n)]
    if kind == "B":
        roots += [e(i) for i in range(n)]
    if kind == "C":
        roots += [tuple(2 * c for c in e(i)) for i in range(n)]
    return roots


def simple_roots(kind, n):
    dim = n + 1 if kind == "A" else n
    e = lambda i: [1 if j == i else 0 for j in range(dim)]
    simple = [[a - b for a, b in zip(e(i), e(i + 1))] for i in range(n if kind == "A" else n - 1)]
    if kind == "B":
        simple.append(e(n - 1))
    if kind == "C":
        simple.append([2 * c for c in e(n - 1)])
    if kind == "D":
        simple.append([a + b for a, b in zip(e(n - 2), e(n - 1))])
    return simple


def kostant(kind, n, mu):
    """Number of ways to write mu as an unordered sum of positive roots (simple-root coordinates)."""
    simple = sp.Matrix(simple_roots(kind, n)).T
    roots = []
    for beta in positive_roots(kind, n):
        c, _ = simple.gauss_jordan_solve(sp.Matrix(beta))
        roots.append(tuple(int(k) for k in c))

    @functools.lru_cache(maxsize=None)
    def count(rest, start):
        if not any(rest):
            return 1
        total = 0
        for k in range(start, len(roots)):
            nxt = tuple(a - b for a, b in zip(rest, roots[k]))
            if min(nxt) >= 0:
                total += count(nxt, k)
        return total

    return count(tuple(mu), 0)


def rational(expr):
    num, den = sp.fraction(sp.cancel(expr))
    return laurent(num), laurent(den)


if __name__ == "__main__":
    print("[3]_q", laurent(qnum(3)))
    print("[2]_{q^2}", laurent(qnum(2, q**2)))
    print("qbinomial(4,2)", laurent(sp.cancel(qnum(4) * qnum(3) / (qnum(2) * qnum(1)))))
    print("(1 + z8)^-1", cyclotomic_inverse([1, 1], 8))
    print("(2 + z3)^-1", cyclotomic_inverse([2, 1], 3))
    print("(1 - z5 + 3 z5^3)^-1", cyclotomic_inverse([1, -1, 0, 3], 5))
    for kind, n, mu in [("A", 3, (2, 2, 2)), ("A", 3, (1, 2, 1)), ("B", 2, (2, 2)), ("B", 2, (2, 4)),
                        ("C", 2, (2, 3)), ("D", 4, (1, 2, 1, 1)), ("B", 3, (1, 2, 2)), ("C", 3, (1, 2, 2))]:
        print("K", kind, n, mu, kostant(kind, n, mu))
    # U_q(sl2) Verma, K v = q^x v: e f^l v = [l][x - l + 1] f^{l-1} v with x = 3/2.
    for l in range(1, 4):
        print("e f^%d at x=3/2" % l, rational(qnum(l) * qnum(sp.Rational(3, 2) - l + 1)))
    # U_q(sl3) Verma at (lambda, alpha_1) = 1/2, (lambda, alpha_2) = -3/2: the vector
    # a f1 f2 v + b f2 f1 v is killed by e1 and e2 iff a [l1 + 1] + b [l1] = 0 and a [l2] + b [l2 + 1] = 0.
    l1, l2 = sp.Rational(1, 2), sp.Rational(-3, 2)
    a, b = sp.symbols("a b")
    sol = sp.solve([a * qnum(l1 + 1) + b * qnum(l1)], [b], dict=True)[0]
    print("sl3 singular b/a", sp.factor(sol[b] / a), rational(sol[b] / a))
    print("sl3 second equation residual", sp.simplify(sol[b].subs(a, 1) * qnum(l2 + 1) + qnum(l2)))
    # Braiding P R on V x V for the natural module of dimension N: eigenvalues q and -q^-1, plus
    # q^(1-N) for so_N and -q^(-1-N) for sp_N.
    print("gl braiding eigenvalues", q, -1 / q)
    print("so5 third eigenvalue", q ** (1 - 5))
    print("sp4 third eigenvalue", -q ** (-1 - 4))
