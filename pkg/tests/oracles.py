"""Independent reference computations used by the test suite.

Nothing here imports the package: each oracle recomputes its quantity by a
different route (sympy, mpmath, brute force) so agreement is meaningful.
"""

from itertools import combinations, product

import mpmath
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.domains import ZZ


def det(m):
    if not m:
        return 1
    return int(sympy.Matrix(m).det())


def invariant_factors(m, cols=None):
    """Nonzero invariant factors, then zeros, as sympy reports them."""
    rows = len(m)
    cols = len(m[0]) if m else (cols or 0)
    if rows == 0 or cols == 0:
        return ()
    snf = sympy_snf(sympy.Matrix(m), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(rows, cols))]
    nonzero = sorted(d for d in diag if d)
    return tuple(nonzero) + (0,) * (len(diag) - len(nonzero))


def rank(m, cols=None):
    if not m:
        return 0
    return sympy.Matrix(m).rank()


def signature(m):
    """Signature from floating eigenvalues of a symmetric integer matrix."""
    if not m:
        return 0
    evals = mpmath.eigsy(mpmath.matrix([[mpmath.mpf(x) for x in r] for r in m]), eigvals_only=True)
    return sum(1 for e in evals if e > 1e-9) - sum(1 for e in evals if e < -1e-9)


def inverse(m):
    inv = sympy.Matrix(m).inv()
    return tuple(tuple(int(x) for x in inv.row(i)) for i in range(len(m)))


def symplectic_pairing(a, b):
    g = len(a) // 2
    return sum(a[i] * b[g + i] - a[g + i] * b[i] for i in range(g))


def wedge3_coords(a, b, c):
    """Coordinates of a^b^c: 3x3 minors of the matrix with rows a, b, c."""
    n = len(a)
    out = []
    for cols in combinations(range(n), 3):
        sub = [[r[j] for j in cols] for r in (a, b, c)]
        out.append(int(sympy.Matrix(sub).det()))
    return tuple(out)


def quadratic_from_linking(value, v):
    """q(v) = l(v, v) mod 2, computed straight from the linking values."""
    return value(v, v) % 2


def mod2_classes(g):
    return product((0, 1), repeat=2 * g)


def arf_by_majority(q_values, h):
    """Arf invariant as the majority value of q on the 2^(2h) classes."""
    ones = sum(q_values)
    return 1 if ones > 4 ** h // 2 else 0


def casson_from_alexander(v_table):
    """lambda' = Delta''(1)/2 from a Seifert matrix in the order a1, b1, a2, b2, ...

    Delta(t) = det(V - t V^T), symmetrized and normalized so Delta(1) = 1.
    """
    t = sympy.symbols("t")
    n = len(v_table)
    h = n // 2
    V = sympy.Matrix(v_table)
    poly = sympy.Poly(sympy.expand((V - t * V.T).det()), t)
    coeffs = {m[0]: c for m, c in zip(poly.monoms(), poly.coeffs())}
    sign = 1 if sum(coeffs.values()) > 0 else -1
    second = sum(c * (m - h) * (m - h - 1) for m, c in coeffs.items())
    return sympy.Integer(sign * second) / 2


def alexander_polynomial(v_table):
    t = sympy.symbols("t")
    V = sympy.Matrix(v_table)
    return sympy.expand((V - t * V.T).det())


def wall_form(alpha, beta, gamma):
    """Form on the gamma classes lying in L_alpha + L_beta.

    Each such class is split as c = a + b with a in L_alpha and b in L_beta
    by a rational linear solve, and Q_ij = <a_i, c_j>.  The split is only
    defined up to L_alpha meet L_beta, which pairs to zero with these c.
    Classes outside the span are skipped.
    """
    A = sympy.Matrix(alpha)
    stacked = A.col_join(sympy.Matrix(beta))
    g = len(alpha)
    kept = []
    for c in gamma:
        try:
            sol, params = stacked.T.gauss_jordan_solve(sympy.Matrix(c))
        except ValueError:
            continue
        sol = sol.subs({p: 0 for p in params})
        a = sol[:g, 0].T * A
        kept.append((tuple(a), tuple(c)))
    return tuple(tuple(int(symplectic_pairing(ai, cj)) for _, cj in kept) for ai, _ in kept)


def linking_value(P, R, u, v):
    """l(u, v) = <v_P, u_R> with the splitting along P + R solved by sympy."""
    g = len(P)
    M = sympy.Matrix(P).col_join(sympy.Matrix(R)).T

    def split(w):
        coeffs = M.solve(sympy.Matrix(w))
        wp = (coeffs[:g, 0].T * sympy.Matrix(P)) if g else sympy.zeros(1, 0)
        wr = (coeffs[g:, 0].T * sympy.Matrix(R)) if g else sympy.zeros(1, 0)
        return tuple(wp), tuple(wr)

    vp, _ = split(v)
    _, ur = split(u)
    return int(symplectic_pairing(vp, ur))
