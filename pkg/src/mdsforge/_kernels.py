"""Compiled inner loops for representative counting.

All kernels work on integer codes through dense lookup tables built by
`field_tables`: ``mul[x, y]``, ``add[x, y]``, ``neg[x]``, ``inv[x]`` and
``sqrt[x]`` (-1 for a non-residue).  Code 0 is zero and code 1 is one.
"""

from __future__ import annotations

import functools

import numpy as np
from numba import njit

from .gf import Field

KERNEL_MAX_Q = 1024


class Tables:
    def __init__(self, field: Field):
        if field.q > KERNEL_MAX_Q:
            raise ValueError(f"compiled kernels support q <= {KERNEL_MAX_Q}")
        q, p, m = field.q, field.p, field.m
        codes = np.arange(q, dtype=np.int64)
        exp = np.array(field._exp, dtype=np.int64)
        log = np.array(field._log, dtype=np.int64)
        mul = exp[(log[:, None] + log[None, :])]
        mul[0, :] = 0
        mul[:, 0] = 0
        if p == 2:
            add = np.bitwise_xor.outer(codes, codes)
        else:
            digits = np.stack([(codes // p**i) % p for i in range(m)], axis=1)
            weights = p ** np.arange(m, dtype=np.int64)
            add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = np.array([field.neg(int(x)) for x in codes], dtype=np.int64)
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = [field.inv(int(x)) for x in codes[1:]]
        sqrt = np.array(
            [-1 if (r := field.sqrt(int(x))) is None else r for x in codes], dtype=np.int64
        )
        self.q = q
        self.mul = np.ascontiguousarray(mul)
        self.add = np.ascontiguousarray(add)
        self.neg = neg
        self.inv = inv
        self.sqrt = sqrt

    def args(self):
        return self.mul, self.add, self.neg, self.inv, self.sqrt


@functools.lru_cache(maxsize=16)
def field_tables(field: Field) -> Tables:
    return Tables(field)


@njit(cache=True, nogil=True)
def _det2(mul, add, neg, a, b, c, d):
    return add[mul[a, d], neg[mul[b, c]]]


@njit(cache=True, nogil=True)
def _det3(mul, add, neg, a, b, c, d, e, f, g, h, i):
    t1 = mul[a, _det2(mul, add, neg, e, f, h, i)]
    t2 = mul[b, _det2(mul, add, neg, d, f, g, i)]
    t3 = mul[c, _det2(mul, add, neg, d, e, g, h)]
    return add[add[t1, neg[t2]], t3]


@njit(cache=True, nogil=True)
def certify_generic(m, n, mul, add, neg, inv, sqrt, aug, alpha):
    """True iff the representative ``m`` (n x n) admits an involution certificate."""
    for i in range(n):
        for j in range(n):
            aug[i, j] = m[i, j]
            aug[i, n + j] = 1 if i == j else 0
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if aug[r, col] != 0:
                piv = r
                break
        if piv < 0:
            return False
        if piv != col:
            for j in range(2 * n):
                t = aug[col, j]
                aug[col, j] = aug[piv, j]
                aug[piv, j] = t
        pinv = inv[aug[col, col]]
        for j in range(2 * n):
            aug[col, j] = mul[pinv, aug[col, j]]
        for r in range(n):
            if r != col:
                fac = aug[r, col]
                if fac != 0:
                    for j in range(2 * n):
                        aug[r, j] = add[aug[r, j], neg[mul[fac, aug[col, j]]]]
    a0 = sqrt[aug[0, n]]
    if a0 <= 0:
        return False
    alpha[0] = a0
    ia = inv[a0]
    for j in range(1, n):
        alpha[j] = mul[aug[0, n + j], ia]
        if alpha[j] == 0:
            return False
    for i in range(n):
        for j in range(n):
            if aug[i, n + j] != mul[mul[alpha[i], alpha[j]], m[i, j]]:
                return False
    return True


@njit(cache=True, nogil=True)
def rep3_block(a, b, q, mul, add, neg, inv, sqrt, out):
    """Representatives [[1,1,1],[1,a,b],[1,c,d]] for one first interior row (a, b).

    Returns (representatives, certified, rows written to ``out``).  When
    ``out`` has capacity, each hit is stored as (c, d, certified).
    """
    reps = 0
    cert = 0
    k = 0
    if a < 2 or b < 2 or a == b:
        return reps, cert, k
    cap = out.shape[0]
    m = np.ones((3, 3), np.int64)
    aug = np.zeros((3, 6), np.int64)
    alpha = np.zeros(3, np.int64)
    m[1, 1] = a
    m[1, 2] = b
    m1 = neg[1]
    am1 = add[a, m1]
    bm1 = add[b, m1]
    for c in range(2, q):
        if c == a:
            continue
        bc = mul[b, c]
        rhs = mul[bm1, add[c, m1]]
        m[2, 1] = c
        for d in range(2, q):
            if d == b or d == c:
                continue
            if mul[a, d] == bc:
                continue
            if mul[am1, add[d, m1]] == rhs:
                continue
            reps += 1
            m[2, 2] = d
            ok = certify_generic(m, 3, mul, add, neg, inv, sqrt, aug, alpha)
            if ok:
                cert += 1
            if k < cap:
                out[k, 0] = c
                out[k, 1] = d
                out[k, 2] = 1 if ok else 0
            k += 1
    return reps, cert, k


@njit(cache=True, nogil=True)
def _m3_ones(mul, add, neg, x0, x1, x2, y0, y1, y2):
    # det [[1,1,1],[x0,x1,x2],[y0,y1,y2]]
    dx1 = add[x1, neg[x0]]
    dx2 = add[x2, neg[x0]]
    dy1 = add[y1, neg[y0]]
    dy2 = add[y2, neg[y0]]
    return add[mul[dx1, dy2], neg[mul[dx2, dy1]]]


@njit(cache=True, nogil=True)
def rep4_block(a, b, c, d, q, mul, add, neg, inv, sqrt, out):
    """Representatives of order 4 whose interior R has the given order-3 class.

    R = diag(l1,l2,l3) * [[1,1,1],[1,a,b],[1,c,d]] * diag(1,t2,t3), so

        M1 = [[1, 1,  1,        1       ],
              [1, l1, l1 t2,    l1 t3   ],
              [1, l2, a l2 t2,  b l2 t3 ],
              [1, l3, c l3 t2,  d l3 t3 ]].

    (a, b, c, d) must already be a valid order-3 representative interior, which
    makes R itself MDS.  The loops check, cheapest first: entries of R differ
    from 1, entries distinct along rows and columns, the fifteen order-3
    minors of M1 other than det R, and det M1.  Returns (representatives,
    certified, rows written); each stored row is the 9 entries of R followed by
    the certificate flag.
    """
    reps = 0
    cert = 0
    k = 0
    cap = out.shape[0]
    mn = np.zeros((4, 4), np.int64)
    dd = np.zeros((4, 4), np.int64)
    cm = np.ones((4, 4), np.int64)
    alpha = np.zeros(4, np.int64)
    for t2 in range(2, q):
        at2 = mul[a, t2]
        ct2 = mul[c, t2]
        if at2 == 1 or ct2 == 1:
            continue
        for t3 in range(2, q):
            if t3 == t2:
                continue
            bt3 = mul[b, t3]
            dt3 = mul[d, t3]
            if bt3 == 1 or dt3 == 1 or at2 == bt3 or ct2 == dt3:
                continue
            for l1 in range(2, q):
                r01 = mul[l1, t2]
                r02 = mul[l1, t3]
                if r01 == 1 or r02 == 1:
                    continue
                for l2 in range(2, q):
                    if l2 == l1:
                        continue
                    r11 = mul[l2, at2]
                    r12 = mul[l2, bt3]
                    if r11 == 1 or r12 == 1 or r11 == r01 or r12 == r02:
                        continue
                    # rows {0,1,2} of M1: the minors omitting row 3
                    m33 = _m3_ones(mul, add, neg, 1, l1, r01, 1, l2, r11)
                    if m33 == 0:
                        continue
                    m32 = _m3_ones(mul, add, neg, 1, l1, r02, 1, l2, r12)
                    if m32 == 0:
                        continue
                    m31 = _m3_ones(mul, add, neg, 1, r01, r02, 1, r11, r12)
                    if m31 == 0:
                        continue
                    m30 = _m3_ones(mul, add, neg, l1, r01, r02, l2, r11, r12)
                    if m30 == 0:
                        continue
                    for l3 in range(2, q):
                        if l3 == l1 or l3 == l2:
                            continue
                        r21 = mul[l3, ct2]
                        r22 = mul[l3, dt3]
                        if r21 == 1 or r22 == 1:
                            continue
                        if r21 == r01 or r21 == r11 or r22 == r02 or r22 == r12:
                            continue
                        # rows {0,1,3}: omit row 2
                        m23 = _m3_ones(mul, add, neg, 1, l1, r01, 1, l3, r21)
                        if m23 == 0:
                            continue
                        m22 = _m3_ones(mul, add, neg, 1, l1, r02, 1, l3, r22)
                        if m22 == 0:
                            continue
                        m21 = _m3_ones(mul, add, neg, 1, r01, r02, 1, r21, r22)
                        if m21 == 0:
                            continue
                        m20 = _m3_ones(mul, add, neg, l1, r01, r02, l3, r21, r22)
                        if m20 == 0:
                            continue
                        # rows {0,2,3}: omit row 1
                        m13 = _m3_ones(mul, add, neg, 1, l2, r11, 1, l3, r21)
                        if m13 == 0:
                            continue
                        m12 = _m3_ones(mul, add, neg, 1, l2, r12, 1, l3, r22)
                        if m12 == 0:
                            continue
                        m11 = _m3_ones(mul, add, neg, 1, r11, r12, 1, r21, r22)
                        if m11 == 0:
                            continue
                        m10 = _m3_ones(mul, add, neg, l2, r11, r12, l3, r21, r22)
                        if m10 == 0:
                            continue
                        # rows {1,2,3} with the ones column: omit row 0.
                        # Row differences against row 1 turn these into 2x2 dets.
                        e11 = add[l2, neg[l1]]
                        e12 = add[r11, neg[r01]]
                        e13 = add[r12, neg[r02]]
                        e21 = add[l3, neg[l1]]
                        e22 = add[r21, neg[r01]]
                        e23 = add[r22, neg[r02]]
                        m03 = add[mul[e11, e22], neg[mul[e12, e21]]]
                        if m03 == 0:
                            continue
                        m02 = add[mul[e11, e23], neg[mul[e13, e21]]]
                        if m02 == 0:
                            continue
                        m01 = add[mul[e12, e23], neg[mul[e13, e22]]]
                        if m01 == 0:
                            continue
                        m00 = _det3(mul, add, neg, l1, r01, r02, l2, r11, r12, l3, r21, r22)
                        # expansion of det M1 along its all-ones first row
                        det = add[add[m00, neg[m01]], add[m02, neg[m03]]]
                        if det == 0:
                            continue
                        reps += 1
                        ok = False
                        # the certificate forces a symmetric first row/column of M1^{-1}
                        if m10 == m01 and m20 == m02 and m30 == m03:
                            mn[0, 0] = m00
                            mn[0, 1] = m01
                            mn[0, 2] = m02
                            mn[0, 3] = m03
                            mn[1, 0] = m10
                            mn[1, 1] = m11
                            mn[1, 2] = m12
                            mn[1, 3] = m13
                            mn[2, 0] = m20
                            mn[2, 1] = m21
                            mn[2, 2] = m22
                            mn[2, 3] = m23
                            mn[3, 0] = m30
                            mn[3, 1] = m31
                            mn[3, 2] = m32
                            mn[3, 3] = m33
                            cm[1, 1] = l1
                            cm[1, 2] = r01
                            cm[1, 3] = r02
                            cm[2, 1] = l2
                            cm[2, 2] = r11
                            cm[2, 3] = r12
                            cm[3, 1] = l3
                            cm[3, 2] = r21
                            cm[3, 3] = r22
                            ok = _certify4(mn, cm, det, mul, add, neg, inv, sqrt, dd, alpha)
                        if ok:
                            cert += 1
                        if k < cap:
                            out[k, 0] = l1
                            out[k, 1] = r01
                            out[k, 2] = r02
                            out[k, 3] = l2
                            out[k, 4] = r11
                            out[k, 5] = r12
                            out[k, 6] = l3
                            out[k, 7] = r21
                            out[k, 8] = r22
                            out[k, 9] = 1 if ok else 0
                        k += 1
    return reps, cert, k


@njit(cache=True, nogil=True)
def _certify4(mn, cm, det, mul, add, neg, inv, sqrt, dd, alpha):
    # inverse entries d_ij = (-1)^{i+j} minor(j, i) / det
    idet = inv[det]
    for i in range(4):
        for j in range(4):
            v = mul[mn[j, i], idet]
            dd[i, j] = neg[v] if (i + j) % 2 == 1 else v
    a0 = sqrt[dd[0, 0]]
    if a0 <= 0:
        return False
    alpha[0] = a0
    ia = inv[a0]
    for j in range(1, 4):
        alpha[j] = mul[dd[0, j], ia]
        if alpha[j] == 0:
            return False
    for i in range(4):
        for j in range(4):
            if dd[i, j] != mul[mul[alpha[i], alpha[j]], cm[i, j]]:
                return False
    return True


@njit(cache=True, nogil=True)
def _passes_r3(r, mul, add, neg, mod):
    """All five interior conditions for a 3x3 R, evaluated in fail-fast order."""
    for i in range(3):
        for j in range(3):
            if r[i, j] == 1 or r[i, j] == 0:
                return False
    for i in range(3):
        if r[i, 0] == r[i, 1] or r[i, 0] == r[i, 2] or r[i, 1] == r[i, 2]:
            return False
        if r[0, i] == r[1, i] or r[0, i] == r[2, i] or r[1, i] == r[2, i]:
            return False
    for i1 in range(3):
        for i2 in range(i1 + 1, 3):
            for j1 in range(3):
                for j2 in range(j1 + 1, 3):
                    if _det2(mul, add, neg, r[i1, j1], r[i1, j2], r[i2, j1], r[i2, j2]) == 0:
                        return False
    if _det3(mul, add, neg, r[0, 0], r[0, 1], r[0, 2], r[1, 0], r[1, 1], r[1, 2],
             r[2, 0], r[2, 1], r[2, 2]) == 0:
        return False
    m1 = neg[1]
    if _det3(mul, add, neg,
             add[r[0, 0], m1], add[r[0, 1], m1], add[r[0, 2], m1],
             add[r[1, 0], m1], add[r[1, 1], m1], add[r[1, 2], m1],
             add[r[2, 0], m1], add[r[2, 1], m1], add[r[2, 2], m1]) == 0:
        return False
    # replacements by ones; index 3 means "no replacement" on that axis
    for ri in range(4):
        for cj in range(4):
            if ri == 3 and cj == 3:
                continue
            for i in range(3):
                for j in range(3):
                    mod[i, j] = 1 if (i == ri or j == cj) else r[i, j]
            if _det3(mul, add, neg, mod[0, 0], mod[0, 1], mod[0, 2], mod[1, 0], mod[1, 1],
                     mod[1, 2], mod[2, 0], mod[2, 1], mod[2, 2]) == 0:
                return False
    return True


@njit(cache=True, nogil=True)
def literal4_scan(first, q, mul, add, neg, out):
    """Scan every 3x3 interior over F* whose leading entry is ``first``.

    Returns the number passing all interior conditions; hits are written to
    ``out`` (9 entries each) while capacity lasts.
    """
    r = np.zeros((3, 3), np.int64)
    mod = np.zeros((3, 3), np.int64)
    idx = np.ones(8, np.int64)
    cap = out.shape[0]
    count = 0
    r[0, 0] = first
    while True:
        for t in range(8):
            r[(t + 1) // 3, (t + 1) % 3] = idx[t]
        if _passes_r3(r, mul, add, neg, mod):
            if count < cap:
                for t in range(9):
                    out[count, t] = r[t // 3, t % 3]
            count += 1
        t = 7
        while t >= 0:
            idx[t] += 1
            if idx[t] < q:
                break
            idx[t] = 1
            t -= 1
        if t < 0:
            break
    return count
