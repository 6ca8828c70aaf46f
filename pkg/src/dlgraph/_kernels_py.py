"""Pure-Python kernels; same signatures as the compiled ``_kernels`` module.

Inputs are the numpy arrays the compiled module takes. Rows are converted
to int bitmasks once per call.
"""
import numpy as np


def _rows(adj):
    return [int(sum(1 << int(v) for v in np.flatnonzero(row))) for row in adj]


def compatible(adj, meet, join):
    """True iff meet and join both map pairs of edges to edges.

    For every ``(u, v)`` the image ``{op(u', v') : u' ~ u, v' ~ v}`` must lie
    in the neighbourhood of ``op(u, v)``. Images are accumulated as bitmasks
    per ``(u', v)`` so the check is cubic rather than quartic.
    """
    rows = _rows(adj)
    n = len(rows)
    nbrs = [[v for v in range(n) if rows[u] >> v & 1] for u in range(n)]
    for table in (meet.tolist(), join.tolist()):
        image = [[0] * n for _ in range(n)]
        for a in range(n):
            ta = table[a]
            img = image[a]
            for v in range(n):
                m = 0
                for b in nbrs[v]:
                    m |= 1 << ta[b]
                img[v] = m
        for u in range(n):
            tu = table[u]
            for v in range(n):
                target = ~rows[tu[v]]
                for a in nbrs[u]:
                    if image[a][v] & target:
                        return False
    return True


def gpa_adjacency(downsets, bad):
    """Adjacency of downsets: no ``bad`` pair mask lies inside either difference."""
    downs = [int(d) for d in downsets]
    masks = [int(m) for m in bad]
    k = len(downs)
    out = np.zeros((k, k), dtype=np.uint8)
    for i in range(k):
        d = downs[i]
        out[i, i] = 1
        for j in range(i + 1, k):
            e = downs[j]
            left = d & ~e
            right = e & ~d
            ok = True
            for m in masks:
                if left & m == m or right & m == m:
                    ok = False
                    break
            if ok:
                out[i, j] = out[j, i] = 1
    return out


def dispensable(adj):
    """Matrix flagging dispensable non-loop edges (closed neighbourhoods)."""
    rows = _rows(adj)
    n = len(rows)
    out = np.zeros((n, n), dtype=np.uint8)
    for x in range(n):
        nx = rows[x]
        for y in range(x + 1, n):
            if not nx >> y & 1:
                continue
            ny = rows[y]
            common = nx & ny
            for z in range(n):
                nz = rows[z]
                if nx != nz and nz != ny and nx & ~nz == 0 and nz & ~ny == 0:
                    break
                if ny != nz and nz != nx and ny & ~nz == 0 and nz & ~nx == 0:
                    break
                cx = nx & nz
                cy = ny & nz
                if cx != common and common & ~cx == 0 and cy != common and common & ~cy == 0:
                    break
            else:
                continue
            out[x, y] = out[y, x] = 1
    return out
