"""Independent brute-force evaluators used as test oracles.

Everything here loops over coordinates in plain Python, sharing no code with
the einsum-based residual builders of the package.
"""
from itertools import product


def mul(c, x, y):
    n = len(x)
    return [sum(x[i] * y[j] * c[i][j][k] for i in range(n) for j in range(n)) for k in range(n)]


def add(*vs):
    return [sum(t) for t in zip(*vs)]


def neg(v):
    return [-a for a in v]


def unit(n, i):
    return [1 if k == i else 0 for k in range(n)]


def apply(M, v):
    return [sum(M[r][c] * v[c] for c in range(len(v))) for r in range(len(M))]


def law_residuals(law, P, x, y, z):
    """Residual vectors of every identity of ``law`` at (x, y, z)."""
    m = lambda name: (lambda a, b: mul(P[name], a, b))
    out = {}
    if law in ("mock_lie", "commutativity"):
        b = m("mul")
        out["commutativity"] = add(b(x, y), neg(b(y, x)))
    if law in ("mock_lie", "jacobi"):
        b = m("mul")
        out["jacobi"] = add(b(x, b(y, z)), b(y, b(z, x)), b(z, b(x, y)))
    if law == "anti_associativity":
        b = m("mul")
        out[law] = add(b(b(x, y), z), b(x, b(y, z)))
    if law in ("anti_leibniz_left", "anti_leibniz_symmetric"):
        b = m("mul")
        out["anti_leibniz_left"] = add(b(x, b(y, z)), b(b(x, y), z), b(y, b(x, z)))
    if law in ("anti_leibniz_right", "anti_leibniz_symmetric"):
        b = m("mul")
        out["anti_leibniz_right"] = add(b(b(x, y), z), b(b(x, z), y), b(x, b(y, z)))
    if law == "dialg_all":
        lt, rt = m("left"), m("right")
        out["left_antiassociator"] = add(lt(lt(x, y), z), lt(x, lt(y, z)))
        out["right_antiassociator"] = add(rt(rt(x, y), z), rt(x, rt(y, z)))
        out["inner_antiassociator"] = add(lt(rt(x, y), z), rt(x, lt(y, z)))
    if law == "anti_leib_trialg_full":
        b, o = m("bracket"), m("circ")
        out["circ_commutativity"] = add(o(x, y), neg(o(y, x)))
        out["circ_jacobi"] = add(o(x, o(y, z)), o(y, o(z, x)), o(z, o(x, y)))
        out["anti_leibniz_left"] = add(b(x, b(y, z)), b(b(x, y), z), b(y, b(x, z)))
        out["compat_1"] = add(b(x, o(y, z)), o(y, b(x, z)), o(z, b(x, y)))
        out["compat_2"] = add(b(o(x, y), z), neg(b(b(x, y), z)))
    return out


def failing_triples(law, P, n, p=None):
    """Sorted (indices, identity) pairs of every violated basis triple."""
    bad = []
    for i, j, k in product(range(n), repeat=3):
        res = law_residuals(law, P, unit(n, i), unit(n, j), unit(n, k))
        for name, v in res.items():
            if any((a % p if p else a) != 0 for a in v):
                bad.append(((i, j, k), name))
    return sorted(bad)


def as_lists(bundle):
    return {name: t.coeffs.tolist() for name, t in bundle.products.items()}


def embedding_ok(K, c, pi, p=None):
    """K(u) o K(v) == K(pi(K u) v) for all carrier basis pairs."""
    m = len(K[0])
    col = lambda u: [row[u] for row in K]
    for u, v in product(range(m), repeat=2):
        Ku, Kv = col(u), col(v)
        act = [sum(Ku[i] * pi[i][a][v] for i in range(len(Ku))) for a in range(m)]
        lhs, rhs = mul(c, Ku, Kv), apply(K, act)
        if any(((a - b) % p if p else a - b) != 0 for a, b in zip(lhs, rhs)):
            return False
    return True
