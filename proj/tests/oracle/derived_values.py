"""Independent computation of the frozen reference values used by the C++ tests.

Run with: python3 tests/oracle/derived_values.py
Uses only sympy/numpy and a small dict-based exterior algebra, with no code
shared with the library. Prints one JSON document.
"""

import itertools
import json

import numpy as np
import sympy as sp

N = 7
PHI_TERMS = [(+1, (1, 2, 3)), (-1, (1, 6, 7)), (-1, (5, 2, 7)), (-1, (5, 6, 3)),
             (-1, (1, 5, 4)), (-1, (2, 6, 4)), (-1, (3, 7, 4))]


def sort_sign(idx):
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def form(terms):
    out = {}
    for c, idx in terms:
        s, key = sort_sign(idx)
        if s:
            out[key] = out.get(key, 0) + s * c
    return {k: v for k, v in out.items() if v != 0}


def wedge(a, b):
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            s, key = sort_sign(ka + kb)
            if s:
                out[key] = out.get(key, 0) + s * va * vb
    return {k: v for k, v in out.items() if v != 0}


def interior(vec, a):
    """vec: dict index -> coefficient."""
    out = {}
    for key, c in a.items():
        for pos, i in enumerate(key):
            if i in vec:
                rest = key[:pos] + key[pos + 1:]
                out[rest] = out.get(rest, 0) + (-1) ** pos * vec[i] * c
    return {k: v for k, v in out.items() if v != 0}


def star(a):
    out = {}
    full = tuple(range(1, N + 1))
    for key, c in a.items():
        comp = tuple(i for i in full if i not in key)
        s, _ = sort_sign(key + comp)
        out[comp] = out.get(comp, 0) + s * c
    return out


PHI = form(PHI_TERMS)
PSI = star(PHI)


def basis(k):
    return list(itertools.combinations(range(1, N + 1), k))


def matrix(op, k, k_out):
    rows = {b: i for i, b in enumerate(basis(k_out))}
    cols = basis(k)
    m = sp.zeros(len(rows), len(cols))
    for j, b in enumerate(cols):
        for key, c in op({b: 1}).items():
            m[rows[key], j] += c
    return m


def iota(eta, a):
    """Frame formula: sign (-1)^(deg eta - 1) * sum_p (e_p . eta) ^ (e_p . a)."""
    out = {}
    sign = (-1) ** (len(next(iter(eta))) - 1)
    for p in range(1, N + 1):
        term = wedge(interior({p: 1}, eta), interior({p: 1}, a))
        for k, v in term.items():
            out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v != 0}


def mode_dims(kvec):
    """Real factors of d, L_B and L_K at one Fourier mode, and the cohomology dimensions."""
    kflat = {(i + 1,): c for i, c in enumerate(kvec) if c}
    K = lambda a: wedge(kflat, a)  # d = i K
    # L_B = iota_B d + d iota_B = i (iota_B K + K iota_B); L_K = iota_K d - d iota_K.
    LB = lambda a: add(iota(PHI, K(a)), K(iota(PHI, a)))
    LK = lambda a: add(iota(PSI, K(a)), scale(-1, K(iota(PSI, a))))
    W = {j: matrix(LB, j, j + 2) for j in range(0, N - 1)}
    V = {j: matrix(LK, j, j + 3) for j in range(0, N - 2)}
    h_phi, h_psi = [], []
    for j in range(N + 1):
        n = len(basis(j))
        ker = n - (W[j].rank() if j in W else 0)
        if j - 2 in W:
            prev = W[j - 2]
            inter = prev.rank() - ((W[j] * prev).rank() if j in W else 0)
        else:
            inter = 0
        h_phi.append(ker - inter)
        ker = n - (V[j].rank() if j in V else 0)
        inter = 0
        if j - 3 in V:
            prev = V[j - 3]
            inter = prev.rank() - ((V[j] * prev).rank() if j in V else 0)
        h_psi.append(ker - inter)
    return h_phi, h_psi


def add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v != 0}


def scale(s, a):
    return {k: s * v for k, v in a.items()}


def phi_symmetry_count():
    count = 0
    target = PHI
    for perm in itertools.permutations(range(1, N + 1)):
        for signs in itertools.product((1, -1), repeat=N):
            ok = True
            for key, c in target.items():
                s, new = sort_sign(tuple(perm[i - 1] for i in key))
                coeff = c * s * signs[key[0] - 1] * signs[key[1] - 1] * signs[key[2] - 1]
                if target.get(new) != coeff:
                    ok = False
                    break
            if ok:
                count += 1
    return count


def heisenberg():
    """CE complex of [e1,e2] = e3 with d e3 = -e1^e2, and the triple <e1,e2,e2>."""
    n = 3
    dgen = {1: {}, 2: {}, 3: {(1, 2): -1}}

    def d(a):
        out = {}
        for key, c in a.items():
            for pos, g in enumerate(key):
                left = {key[:pos]: 1} if pos else {(): 1}
                right = {key[pos + 1:]: 1}
                term = wedge(wedge(left, dgen[g]), right)
                for k, v in term.items():
                    out[k] = out.get(k, 0) + (-1) ** pos * c * v
        return {k: v for k, v in out.items() if v != 0}

    def bas(k):
        return list(itertools.combinations(range(1, n + 1), k))

    def mat(k):
        rows = {b: i for i, b in enumerate(bas(k + 1))}
        cols = bas(k)
        m = sp.zeros(len(rows), len(cols))
        for j, b in enumerate(cols):
            for key, c in d({b: 1}).items():
                m[rows[key], j] += c
        return m

    D = {k: mat(k) for k in range(n)}
    betti = []
    for k in range(n + 1):
        dim = len(bas(k))
        ker = dim - (D[k].rank() if k < n else 0)
        im = D[k - 1].rank() if k > 0 else 0
        betti.append(ker - im)
    e1, e2 = {(1,): 1}, {(2,): 1}
    # f with d f = e1 e2: solve over degree-1 cochains.
    target = wedge(e1, e2)
    sol = sp.Matrix(D[1]).gauss_jordan_solve(sp.Matrix([target.get(b, 0) for b in bas(2)]))[0]
    sol = sol.subs({s: 0 for s in sol.free_symbols})
    f = {b: sol[i] for i, b in enumerate(bas(1)) if sol[i] != 0}
    g = {}  # e2 e2 = 0
    rep = add(wedge(f, e2), scale(1, wedge(e1, g)))  # f c - (-1)^1 a g
    # Nonvanishing: rep not in B^2 + H^1 . H^1, which is spanned by d(Λ^1) and products of closed 1-forms.
    z1 = [b for b in bas(1) if not d({b: 1})]
    prods = [wedge({a: 1}, {b: 1}) for a in z1 for b in z1]
    span = [list(D[1].col(i)) for i in range(D[1].cols)] + [[p.get(b, 0) for b in bas(2)] for p in prods]
    M = sp.Matrix(span).T
    v = sp.Matrix([rep.get(b, 0) for b in bas(2)])
    nonvanishing = M.rank() < M.row_join(v).rank()
    return betti, {"f": {str(k): int(v) for k, v in f.items()}, "rep": {str(k): int(v) for k, v in rep.items()},
                   "nonvanishing": bool(nonvanishing)}


def e8():
    m = 2 * np.eye(8)
    for i in range(6):
        m[i, i + 1] = m[i + 1, i] = -1
    m[4, 7] = m[7, 4] = -1
    return m


def main():
    out = {}
    e1phi = interior({1: 1}, PHI)
    out["e1_phi"] = {"".join(map(str, k)): v for k, v in sorted(e1phi.items())}
    # e1 x e2 = (e2 . e1 . phi)^#
    cross = interior({2: 1}, interior({1: 1}, PHI))
    out["e1_cross_e2"] = {str(k[0]): v for k, v in cross.items()}
    out["phi_symmetries"] = phi_symmetry_count()

    modes = [(1, 0, 0, 0, 0, 0, 0), (1, 2, 0, 0, 0, 0, -1), (3, -1, 2, 0, 1, 0, -2)]
    out["modes"] = {}
    for k in modes:
        h_phi, h_psi = mode_dims(k)
        out["modes"][",".join(map(str, k))] = {"H_phi": h_phi, "H_psi": h_psi}
    d_k = out["modes"]["1,2,0,0,0,0,-1"]["H_phi"][3]
    psi2 = out["modes"]["1,2,0,0,0,0,-1"]["H_psi"][2]
    psi3 = out["modes"]["1,2,0,0,0,0,-1"]["H_psi"][3]
    betti_t7 = [sp.binomial(7, j) for j in range(8)]
    out["truncation"] = []
    for n in (1, 2, 3):
        pairs = ((2 * n + 1) ** 7 - 1) // 2
        out["truncation"].append({"n": n, "pairs": pairs,
                                  "H3_phi": int(betti_t7[3] + pairs * d_k),
                                  "H2_psi": int(betti_t7[2] + pairs * psi2),
                                  "H3_psi": int(betti_t7[3] + pairs * psi3)})

    betti, massey = heisenberg()
    out["heisenberg_betti"] = betti
    out["heisenberg_massey"] = massey

    h = np.array([[0, 1], [1, 0]])
    blocks = [-e8(), -e8(), h, h, h]
    q = np.zeros((22, 22))
    off = 0
    for b in blocks:
        q[off:off + len(b), off:off + len(b)] = b
        off += len(b)
    ev = np.linalg.eigvalsh(q)
    out["k3_signature"] = int((ev > 0).sum() - (ev < 0).sum())
    out["k3_even"] = bool(all(int(round(q[i, i])) % 2 == 0 for i in range(22)))
    out["e8_det"] = int(round(np.linalg.det(e8())))
    w, l = [1, 2, 2, 1], [1, 1, 22, 1, 1]
    out["betti_M"] = [int(x) for x in np.convolve(w, l)]
    print(json.dumps(out, indent=1))


if __name__ == "__main__":
    main()
