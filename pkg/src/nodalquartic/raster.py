"""Rasterized components of the projective plane minus a quartic curve.

The sample lattice is the surface of the cube |x_i| <= 1 (6 faces, R x R
cells each), which double covers the projective plane by the antipodal
map (f, i, j) <-> (f ^ 1, R-1-i, R-1-j).  Cell centers have exact integer
scaled coordinates, so the sign of an integer-rescaled form at a cell is
exact: int64 vectorized when a static bound certifies no overflow, else
a float screen whose undecided cells are recomputed with big integers.

Cells meeting the curve are masked from the sign grid (zero values and
both sides of every strict sign change) and, when a parametrization is
available, from a fine image trace with a one-cell halo.  The remaining
cells are grouped by sign into 4-connected components twice: once on the
sphere and once after antipodal identification.  A component of the
quotient is a disk exactly when its spherical preimage is disconnected
and each of the two copies has pixel Euler characteristic one.
"""

from fractions import Fraction
from math import floor, gcd

import numpy as np
from scipy import ndimage

from .errors import UnstableResolution

_STRUCT = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def _axes(f):
    a = f >> 1
    u_ax, v_ax = [x for x in (0, 1, 2) if x != a]
    return a, (1 if f % 2 == 0 else -1), u_ax, v_ax


def _face_coords(f, R):
    a, sgn, u_ax, v_ax = _axes(f)
    line = np.arange(R, dtype=np.int64) * 2 + 1 - R
    u, v = np.meshgrid(line, line, indexing="ij")
    out = [None, None, None]
    out[a] = np.full((R, R), sgn * R, dtype=np.int64)
    out[u_ax] = u
    out[v_ax] = v
    return out


def _cell_center(f, i, j, R):
    a, sgn, u_ax, v_ax = _axes(f)
    out = [0, 0, 0]
    out[a] = sgn * R
    out[u_ax] = 2 * i + 1 - R
    out[v_ax] = 2 * j + 1 - R
    return tuple(out)


def _integer_coeffs(F):
    den = 1
    for c in F.coeffs.values():
        den = den * c.denominator // gcd(den, c.denominator)
    out = {e: int(c * den) for e, c in F.coeffs.items()}
    g = 0
    for v in out.values():
        g = gcd(g, abs(v))
    return {e: v // g for e, v in out.items()}


def _signs_on_face(ints, f, R):
    X = _face_coords(f, R)
    bound = sum(abs(c) for c in ints.values()) * R ** 4
    if bound < 2 ** 62:
        acc = np.zeros((R, R), dtype=np.int64)
        for (i, j, k), c in ints.items():
            acc += c * X[0] ** i * X[1] ** j * X[2] ** k
        return np.sign(acc).astype(np.int8)
    Xf = [x.astype(np.float64) for x in X]
    acc = np.zeros((R, R), dtype=np.float64)
    for (i, j, k), c in ints.items():
        acc += float(c) * Xf[0] ** i * Xf[1] ** j * Xf[2] ** k
    # generous forward error bound for the float accumulation
    thr = float(bound) * (8 * (len(ints) + 4)) * 2.0 ** -52
    sig = np.zeros((R, R), dtype=np.int8)
    sig[acc > thr] = 1
    sig[acc < -thr] = -1
    undecided = np.argwhere(np.abs(acc) <= thr)
    for i, j in undecided:
        c3 = _cell_center(f, int(i), int(j), R)
        val = sum(c * c3[0] ** a * c3[1] ** b * c3[2] ** d
                  for (a, b, d), c in ints.items())
        sig[i, j] = 0 if val == 0 else (1 if val > 0 else -1)
    return sig


def _seam_pairs(R):
    """Pairs of cells sharing a cube-edge cell boundary, by midpoint key."""
    buckets = {}
    for f in range(6):
        a, sgn, u_ax, v_ax = _axes(f)
        for i in range(R):
            for side, (ci, cj) in (("u0", (0, i)), ("u1", (R - 1, i)),
                                   ("v0", (i, 0)), ("v1", (i, R - 1))):
                key3 = [0, 0, 0]
                key3[a] = sgn * R
                if side in ("u0", "u1"):
                    key3[u_ax] = -R if side == "u0" else R
                    key3[v_ax] = 2 * cj + 1 - R
                else:
                    key3[v_ax] = -R if side == "v0" else R
                    key3[u_ax] = 2 * ci + 1 - R
                buckets.setdefault(tuple(key3), []).append((f, ci, cj))
    pairs = []
    for key, cells in buckets.items():
        if len(cells) != 2:
            raise AssertionError("seam bucket of size %d" % len(cells))
        pairs.append((cells[0], cells[1]))
    return pairs


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


class RasterMap:
    """Signed sample grid, curve mask and labeled off-curve components."""

    __slots__ = ("resolution", "signs", "curve_mask", "labels", "components",
                 "cells", "stable", "_s2labels", "_s2_of_comp", "_chi",
                 "_disk")

    def __init__(self, resolution, signs, curve_mask, labels, components,
                 cells, s2labels, s2_of_comp, stable):
        object.__setattr__(self, "resolution", resolution)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "curve_mask", curve_mask)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "_s2labels", s2labels)
        object.__setattr__(self, "_s2_of_comp", s2_of_comp)
        object.__setattr__(self, "_chi", {})
        object.__setattr__(self, "_disk", {})
        object.__setattr__(self, "stable", stable)

    def __setattr__(self, *a):
        raise AttributeError("RasterMap is immutable")

    def cell_of(self, point):
        """Grid cell containing the ray of a rational coordinate triple."""
        x = [Fraction(v) for v in point]
        mags = [abs(v) for v in x]
        m = max(mags)
        if m == 0:
            raise ValueError("zero vector has no direction")
        a = mags.index(m)
        f = 2 * a + (0 if x[a] > 0 else 1)
        _, sgn, u_ax, v_ax = _axes(f)
        R = self.resolution
        scale = x[a] * sgn
        i = min(R - 1, max(0, floor((x[u_ax] / scale + 1) * R / 2)))
        j = min(R - 1, max(0, floor((x[v_ax] / scale + 1) * R / 2)))
        return f, i, j

    def component_of(self, point):
        """Component id at a point, spiraling off the curve mask if needed."""
        f, i, j = self.cell_of(point)
        R = self.resolution
        lab = self.labels[f]
        if lab[i, j] >= 0:
            return int(lab[i, j])
        for radius in range(1, R):
            lo_i, hi_i = max(0, i - radius), min(R - 1, i + radius)
            lo_j, hi_j = max(0, j - radius), min(R - 1, j + radius)
            for ii in range(lo_i, hi_i + 1):
                for jj in range(lo_j, hi_j + 1):
                    if max(abs(ii - i), abs(jj - j)) != radius:
                        continue
                    if lab[ii, jj] >= 0:
                        return int(lab[ii, jj])
        raise ValueError("no labeled cell near the point")

    def lift_count(self, component):
        return len(self._s2_of_comp[component])

    def lift_euler(self, component):
        """Euler characteristic of each spherical copy of a component."""
        if component not in self._chi:
            out = []
            for root in sorted(self._s2_of_comp[component]):
                masks = [self._s2labels[f] == root for f in range(6)]
                out.append(_euler(masks, self.resolution))
            object.__getattribute__(self, "_chi")[component] = tuple(out)
        return self._chi[component]

    def summary(self):
        return {"resolution": self.resolution,
                "stable": self.stable,
                "components": [{"id": c, "cells": self.cells[c],
                                "disk": is_disk(self, c)}
                               for c in self.components]}

    def to_pgm(self, path):
        """Faces stacked vertically; mask black, components spread in gray."""
        R = self.resolution
        img = np.zeros((6 * R, R), dtype=np.uint8)
        for f in range(6):
            block = np.zeros((R, R), dtype=np.uint8)
            lab = self.labels[f]
            for c in self.components:
                block[lab == c] = 40 + (c * 83) % 216
            img[f * R:(f + 1) * R] = block
        with open(path, "wb") as fh:
            fh.write(b"P5\n%d %d\n255\n" % (R, 6 * R))
            fh.write(img.tobytes())


def _euler(face_masks, R):
    """V - E + F of a union of cells, canonical keys on cube seams."""
    V = E = C = 0
    seam_v, seam_e = set(), set()
    for f in range(6):
        m = face_masks[f]
        cnt = int(m.sum())
        if not cnt:
            continue
        C += cnt
        a, sgn, u_ax, v_ax = _axes(f)
        inc = np.zeros((R + 1, R + 1), dtype=bool)
        inc[:-1, :-1] |= m
        inc[1:, :-1] |= m
        inc[:-1, 1:] |= m
        inc[1:, 1:] |= m
        V += int(inc[1:R, 1:R].sum())
        border = [(iv, 0) for iv in np.flatnonzero(inc[:, 0])] + \
                 [(iv, R) for iv in np.flatnonzero(inc[:, R])] + \
                 [(0, jv) for jv in np.flatnonzero(inc[0, :])] + \
                 [(R, jv) for jv in np.flatnonzero(inc[R, :])]
        for iv, jv in border:
            key = [0, 0, 0]
            key[a] = sgn * R
            key[u_ax] = 2 * int(iv) - R
            key[v_ax] = 2 * int(jv) - R
            seam_v.add(tuple(key))
        ue = np.zeros((R, R + 1), dtype=bool)
        ue[:, :-1] |= m
        ue[:, 1:] |= m
        E += int(ue[:, 1:R].sum())
        ve = np.zeros((R + 1, R), dtype=bool)
        ve[:-1, :] |= m
        ve[1:, :] |= m
        E += int(ve[1:R, :].sum())
        for side, jv in (("lo", 0), ("hi", R)):
            for iv in np.flatnonzero(ue[:, jv]):
                key = [0, 0, 0]
                key[a] = 2 * sgn * R
                key[u_ax] = 2 * (2 * int(iv) + 1 - R)
                key[v_ax] = 2 * (2 * jv - R)
                seam_e.add(tuple(key))
        for side, iv in (("lo", 0), ("hi", R)):
            for jv in np.flatnonzero(ve[iv, :]):
                key = [0, 0, 0]
                key[a] = 2 * sgn * R
                key[u_ax] = 2 * (2 * iv - R)
                key[v_ax] = 2 * (2 * int(jv) + 1 - R)
                seam_e.add(tuple(key))
    return V + len(seam_v) - (E + len(seam_e)) + C


def _trace_cells(curve, R, n_samples):
    """Cells met by the image of the parametrization, via a circle sweep."""
    den = 1
    for form in curve.forms:
        for c in form.real_fractions():
            den = den * c.denominator // gcd(den, c.denominator)
    rows = [[int(c * den) for c in form.real_fractions()]
            for form in curve.forms]
    N = n_samples
    hits = set()
    for k in range(N):
        a = 2 * k - N
        s, t = N * N - a * a, 2 * a * N
        pows_s = [1] * 5
        pows_t = [1] * 5
        for r in range(1, 5):
            pows_s[r] = pows_s[r - 1] * s
            pows_t[r] = pows_t[r - 1] * t
        pt = [sum(row[r] * pows_s[4 - r] * pows_t[r] for r in range(5))
              for row in rows]
        if not any(pt):
            continue
        hits.add(_locate_int(pt, R))
    return hits


def _locate_int(pt, R):
    mags = [abs(v) for v in pt]
    m = max(mags)
    a = mags.index(m)
    f = 2 * a + (0 if pt[a] > 0 else 1)
    _, sgn, u_ax, v_ax = _axes(f)
    scale = pt[a] * sgn
    i = min(R - 1, max(0, (pt[u_ax] + scale) * R // (2 * scale)))
    j = min(R - 1, max(0, (pt[v_ax] + scale) * R // (2 * scale)))
    return f, int(i), int(j)


def _build(F, R, curve=None):
    ints = _integer_coeffs(F)
    signs = np.stack([_signs_on_face(ints, f, R) for f in range(6)])
    mask = signs == 0
    # both sides of every strict in-face sign change
    for f in range(6):
        s = signs[f]
        flip = s[:-1, :] * s[1:, :] == -1
        mask[f][:-1, :] |= flip
        mask[f][1:, :] |= flip
        flip = s[:, :-1] * s[:, 1:] == -1
        mask[f][:, :-1] |= flip
        mask[f][:, 1:] |= flip
    pairs = _seam_pairs(R)
    for (fa, ia, ja), (fb, ib, jb) in pairs:
        if signs[fa][ia, ja] * signs[fb][ib, jb] == -1:
            mask[fa][ia, ja] = True
            mask[fb][ib, jb] = True
    if curve is not None:
        for f, i, j in _trace_cells(curve, R, 8 * R):
            for fi, ii, jj in ((f, i, j), (f ^ 1, R - 1 - i, R - 1 - j)):
                mask[fi][ii, jj] = True
                if ii > 0:
                    mask[fi][ii - 1, jj] = True
                if ii < R - 1:
                    mask[fi][ii + 1, jj] = True
                if jj > 0:
                    mask[fi][ii, jj - 1] = True
                if jj < R - 1:
                    mask[fi][ii, jj + 1] = True
    glabels = np.zeros((6, R, R), dtype=np.int64)
    nxt = 1
    for f in range(6):
        for sval in (1, -1):
            eligible = (signs[f] == sval) & ~mask[f]
            lab, n = ndimage.label(eligible, structure=_STRUCT)
            glabels[f][eligible] = lab[eligible] + (nxt - 1)
            nxt += n
    uf_s2 = _UnionFind(nxt)
    for (fa, ia, ja), (fb, ib, jb) in pairs:
        la, lb = int(glabels[fa][ia, ja]), int(glabels[fb][ib, jb])
        if la and lb and signs[fa][ia, ja] == signs[fb][ib, jb]:
            uf_s2.union(la, lb)
    s2root = [uf_s2.find(x) for x in range(nxt)]
    uf_rp = _UnionFind(nxt)
    uf_rp.parent = list(s2root)
    for x in range(nxt):
        uf_rp.parent[x] = uf_rp.find(x)
    for f in (0, 2, 4):
        A = glabels[f]
        B = glabels[f ^ 1][::-1, ::-1]
        both = (A > 0) & (B > 0)
        if both.any():
            pl = np.unique(np.stack([A[both], B[both]]), axis=1)
            for la, lb in pl.T:
                uf_rp.union(int(la), int(lb))
    # deterministic component ids: by smallest preliminary label
    roots = sorted({uf_rp.find(x) for x in range(1, nxt)})
    comp_of_root = {root: cid for cid, root in enumerate(roots)}
    lut = np.full(nxt, -1, dtype=np.int64)
    for x in range(1, nxt):
        lut[x] = comp_of_root[uf_rp.find(x)]
    labels = lut[glabels]
    s2lut = np.full(nxt, -1, dtype=np.int64)
    for x in range(1, nxt):
        s2lut[x] = s2root[x]
    s2labels = s2lut[glabels]
    cells = {}
    s2_of_comp = {}
    for cid in range(len(roots)):
        sel = labels == cid
        cells[cid] = int(sel.sum())
        s2_of_comp[cid] = sorted(int(v) for v in np.unique(s2labels[sel]))
    return RasterMap(R, signs, mask, labels, tuple(range(len(roots))),
                     cells, s2labels, s2_of_comp, False)


def is_disk(m: RasterMap, component) -> bool:
    """Disconnected spherical preimage with both copies contractible."""
    cache = object.__getattribute__(m, "_disk")
    if component not in cache:
        if m.lift_count(component) != 2:
            cache[component] = False
        else:
            cache[component] = all(x == 1 for x in m.lift_euler(component))
    return cache[component]


def _stable_pair(F, R, curve):
    lo = _build(F, R, curve)
    hi = _build(F, 2 * R, curve)
    flags_lo = sorted(is_disk(lo, c) for c in lo.components)
    flags_hi = sorted(is_disk(hi, c) for c in hi.components)
    if len(lo.components) != len(hi.components) or flags_lo != flags_hi:
        raise UnstableResolution(
            "component structure changed from %d to %d cells per side"
            % (R, 2 * R))
    return RasterMap(lo.resolution, lo.signs, lo.curve_mask, lo.labels,
                     lo.components, lo.cells,
                     object.__getattribute__(lo, "_s2labels"),
                     object.__getattribute__(lo, "_s2_of_comp"), True)


def raster_implicit(F, resolution, curve=None, check_stability=True):
    """Raster map of the zero set of a ternary form (optionally traced)."""
    if resolution < 64:
        raise ValueError("resolution below 64")
    if F.degree % 2:
        raise ValueError("sign grids need an even-degree form")
    if F.is_zero():
        raise ValueError("zero form has no complement")
    if check_stability:
        return _stable_pair(F, resolution, curve)
    return _build(F, resolution, curve)


def raster_components(c, resolution) -> RasterMap:
    """Stable raster map of the complement of a parametrized quartic."""
    from .implicit import implicitize

    q = implicitize(c)
    return raster_implicit(q.F, resolution, curve=c, check_stability=True)
