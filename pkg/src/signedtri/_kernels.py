"""Compiled batch versions of the single-run estimators.

Each kernel runs one estimator per seed in ``seeds`` and returns the raw
outputs.  The draw order and float accumulation order match the pure Python
reference implementations in :mod:`signedtri.estimators` exactly; numba's
``np.random.seed``/``np.random.random`` reproduce ``RandomState`` streams, so
a kernel value equals the reference value bit for bit.

State lives in dense ``n x n`` tables that are reset entry by entry after
each run, which keeps per-run cost proportional to the stream, not to n^2.
"""
import numpy as np
from numba import njit

P = 2147483647  # 2**31 - 1


@njit(cache=True, nogil=True)
def _hash_table(n, thr, out):
    a = np.int64(np.random.random() * P)
    b = np.int64(np.random.random() * P)
    for u in range(n):
        out[u] = 1 if (a * u + b) % P < thr else 0


@njit(cache=True, nogil=True)
def _gap(log_q, limit):
    if log_q == -np.inf:
        return 0
    x = np.floor(np.log(1.0 - np.random.random()) / log_q)
    if x >= limit:
        return limit
    return np.int64(x)


@njit(cache=True, nogil=True)
def light_batch(us, vs, ss, n, k, m, log_q, seeds, signed):
    """Sketch-based estimator; output per run is 0 or +-k*m."""
    L = us.shape[0]
    out = np.zeros(seeds.shape[0])
    present = np.zeros((n, n), dtype=np.int8)
    scale = float(k) * float(m)
    for r in range(seeds.shape[0]):
        np.random.seed(np.uint32(seeds[r]))
        thr = np.random.random()
        surv = 1.0
        res = 0.0
        size = 2 * m
        done = False
        inserted = 0
        fire = _gap(log_q, L)
        for ell in range(L):
            v = us[ell]
            w = vs[ell]
            sig = ss[ell]
            if ell == fire:
                fire = ell + 1 + _gap(log_q, L)
                for u in range(n):
                    pv = present[u, v]
                    pw = present[u, w]
                    if pv == 0 and pw == 0:
                        continue
                    if signed:
                        if sig > 0:
                            nq = 1
                        else:
                            nq = 2
                    else:
                        nq = 1
                    for q in range(nq):
                        if signed:
                            if sig > 0:
                                want_v = -1
                                want_w = -1
                            elif q == 0:
                                want_v = 1
                                want_w = -1
                            else:
                                want_v = -1
                                want_w = 1
                            hx = present[u, v] == want_v
                            hy = present[u, w] == want_w
                        else:
                            hx = present[u, v] != 0
                            hy = present[u, w] != 0
                        if not hx and not hy:
                            continue
                        if hx and hy:
                            nxt = surv * (1.0 - 2.0 / size)
                            if nxt <= thr:
                                res = scale
                                done = True
                                break
                            surv = nxt
                            present[u, v] = 0
                            present[u, w] = 0
                            size -= 2
                        else:
                            nxt = surv * (1.0 - 1.0 / size)
                            if nxt <= thr:
                                if np.random.random() < 0.5:
                                    res = -scale
                                else:
                                    res = scale
                                done = True
                                break
                            surv = nxt
                            if hx:
                                present[u, v] = 0
                            else:
                                present[u, w] = 0
                            size -= 1
                    if done:
                        break
            if done:
                break
            s = sig if signed else 1
            present[v, w] = s
            present[w, v] = s
            inserted = ell + 1
        out[r] = res
        for j in range(inserted):
            present[us[j], vs[j]] = 0
            present[vs[j], us[j]] = 0
    return out


@njit(cache=True, nogil=True)
def heavy_batch(us, vs, ss, n, p_v_thr, p_i, weights, seeds, signed):
    """Sampled-wedge estimator with intervening-degree weights (unscaled).

    Each directed copy is kept with probability about 1/m, so the stored
    list is short and every per-edge loop walks that list only.
    """
    L = us.shape[0]
    out = np.zeros(seeds.shape[0])
    stored = np.zeros((n, n), dtype=np.int8)
    dp = np.zeros((n, n), dtype=np.int64)
    dm = np.zeros((n, n), dtype=np.int64)
    hv = np.zeros(n, dtype=np.int8)
    sx = np.empty(2 * L, dtype=np.int64)
    sy = np.empty(2 * L, dtype=np.int64)
    cand = np.empty(2 * L, dtype=np.int64)
    for r in range(seeds.shape[0]):
        np.random.seed(np.uint32(seeds[r]))
        _hash_table(n, p_v_thr, hv)
        res = 0.0
        ns = 0
        any_v = False
        for u in range(n):
            if hv[u] == 1:
                any_v = True
                break
        if not any_v:
            # no head can ever be stored
            continue
        for ell in range(L):
            v = us[ell]
            w = vs[ell]
            sig = ss[ell]
            if ns > 0:
                nc = 0
                for j in range(ns):
                    if sy[j] == v and stored[sx[j], w] != 0:
                        # insertion sort keeps heads ascending
                        u = sx[j]
                        i = nc
                        while i > 0 and cand[i - 1] > u:
                            cand[i] = cand[i - 1]
                            i -= 1
                        cand[i] = u
                        nc += 1
                for i in range(nc):
                    u = cand[i]
                    a = stored[u, v]
                    b = stored[u, w]
                    if not signed:
                        res += weights[dp[u, v] + dm[u, v] + dp[u, w] + dm[u, w]]
                    elif sig > 0:
                        if a < 0 and b < 0:
                            res += weights[dp[u, v] + dm[u, v] + dp[u, w] + dm[u, w]]
                    else:
                        if a > 0 and b < 0:
                            res += weights[dm[u, v] + dp[u, w] + dm[u, w]]
                        elif a < 0 and b > 0:
                            res += weights[dp[u, v] + dm[u, v] + dm[u, w]]
                for j in range(ns):
                    y = sy[j]
                    if y == v or y == w:
                        if sig > 0:
                            dp[sx[j], y] += 1
                        else:
                            dm[sx[j], y] += 1
            if hv[v] == 1 and np.random.random() < p_i:
                stored[v, w] = sig
                dp[v, w] = 0
                dm[v, w] = 0
                sx[ns] = v
                sy[ns] = w
                ns += 1
            if hv[w] == 1 and np.random.random() < p_i:
                stored[w, v] = sig
                dp[w, v] = 0
                dm[w, v] = 0
                sx[ns] = w
                sy[ns] = v
                ns += 1
        out[r] = res
        for j in range(ns):
            stored[sx[j], sy[j]] = 0
            dp[sx[j], sy[j]] = 0
            dm[sx[j], sy[j]] = 0
    return out


@njit(cache=True, nogil=True)
def classical_batch(us, vs, ss, n, p_v_thr, p_e, inc, seeds):
    """Sampled-vertex/edge estimator; columns are (t1, balanced, unbalanced).

    Candidate centres come from the stored-neighbour list of the endpoint
    with fewer stored edges.  All increments equal ``inc``, so the sums do
    not depend on the visiting order.
    """
    L = us.shape[0]
    out = np.zeros((seeds.shape[0], 3))
    sk = np.zeros((n, n), dtype=np.int8)
    hv = np.zeros(n, dtype=np.int8)
    deg = np.zeros(n, dtype=np.int64)
    nb = np.empty((n, n), dtype=np.int64)
    kept = np.empty(L, dtype=np.int64)
    for r in range(seeds.shape[0]):
        np.random.seed(np.uint32(seeds[r]))
        _hash_table(n, p_v_thr, hv)
        t1 = 0.0
        bal = 0.0
        unbal = 0.0
        nk = 0
        for ell in range(L):
            v = us[ell]
            w = vs[ell]
            sig = ss[ell]
            x = v
            y = w
            if deg[w] < deg[v]:
                x = w
                y = v
            for i in range(deg[x]):
                u = nb[x, i]
                if hv[u] == 0:
                    continue
                b = sk[u, y]
                if b == 0:
                    continue
                a = sk[u, x]
                if sig > 0:
                    if a < 0 and b < 0:
                        t1 += inc
                    if a == b:
                        bal += inc
                    else:
                        unbal += inc
                else:
                    if a != b:
                        t1 += inc
                        bal += inc
                    else:
                        unbal += inc
            if np.random.random() < p_e and (hv[v] == 1 or hv[w] == 1):
                sk[v, w] = sig
                sk[w, v] = sig
                nb[v, deg[v]] = w
                deg[v] += 1
                nb[w, deg[w]] = v
                deg[w] += 1
                kept[nk] = ell
                nk += 1
        out[r, 0] = t1
        out[r, 1] = bal
        out[r, 2] = unbal
        for j in range(nk):
            e = kept[j]
            sk[us[e], vs[e]] = 0
            sk[vs[e], us[e]] = 0
            deg[us[e]] = 0
            deg[vs[e]] = 0
    return out
