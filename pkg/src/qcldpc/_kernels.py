"""Compiled decode loops.

Layered single-scan min-sum over flat CSR adjacency. Check messages are kept
compressed per row as (min1, min2, argmin, sign bitmap, sign product) and
reconstructed on the fly; posteriors are updated tier by tier so later tiers
see the current values within the same super-iteration.

The fixed-point kernel wraps to int16 after every subtract, negate, abs and
add, matching two's-complement int16 arithmetic everywhere (abs(-32768) stays
-32768), so results are bit-identical to an int16 numpy evaluation.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def decode_batch_f32(row_ptr, col_idx, mb, z, llrs, max_iters, early_term,
                     hard, iters, conv):
    n_rows = row_ptr.shape[0] - 1
    n = llrs.shape[1]
    maxdeg = 0
    for m in range(n_rows):
        d = row_ptr[m + 1] - row_ptr[m]
        if d > maxdeg:
            maxdeg = d
    post = np.empty(n, np.float32)
    min1 = np.empty(n_rows, np.float32)
    min2 = np.empty(n_rows, np.float32)
    amin = np.empty(n_rows, np.int8)
    sbits = np.empty(n_rows, np.uint32)
    sprod = np.empty(n_rows, np.uint8)
    zrow = np.empty(maxdeg, np.float32)

    for w in range(llrs.shape[0]):
        for i in range(n):
            post[i] = llrs[w, i]
        for m in range(n_rows):
            min1[m] = np.float32(0.0)
            min2[m] = np.float32(0.0)
            amin[m] = 0
            sbits[m] = 0
            sprod[m] = 0
        it = 0
        ok = False
        for k in range(max_iters):
            for t in range(mb):
                for m in range(t * z, (t + 1) * z):
                    lo = row_ptr[m]
                    deg = row_ptr[m + 1] - lo
                    m1 = min1[m]
                    m2 = min2[m]
                    am = amin[m]
                    sb = np.int64(sbits[m])
                    sp = np.int64(sprod[m])
                    nm1 = np.float32(np.inf)
                    nm2 = np.float32(np.inf)
                    nam = 0
                    nsb = np.int64(0)
                    nsp = np.int64(0)
                    for j in range(deg):
                        mag = m2 if j == am else m1
                        lold = -mag if (sp ^ ((sb >> j) & 1)) == 1 else mag
                        zz = post[col_idx[lo + j]] - lold
                        zrow[j] = zz
                        a = abs(zz)
                        if a < nm1:
                            nm2 = nm1
                            nm1 = a
                            nam = j
                        elif a < nm2:
                            nm2 = a
                        if zz < np.float32(0.0):
                            nsb |= np.int64(1) << j
                            nsp ^= 1
                    for j in range(deg):
                        mag = nm2 if j == nam else nm1
                        lnew = -mag if (nsp ^ ((nsb >> j) & 1)) == 1 else mag
                        post[col_idx[lo + j]] = zrow[j] + lnew
                    min1[m] = nm1
                    min2[m] = nm2
                    amin[m] = nam
                    sbits[m] = nsb
                    sprod[m] = nsp
            it = k + 1
            ok = True
            for m in range(n_rows):
                par = 0
                for p in range(row_ptr[m], row_ptr[m + 1]):
                    if post[col_idx[p]] <= np.float32(0.0):
                        par ^= 1
                if par == 1:
                    ok = False
                    break
            if ok and early_term != 0:
                break
        for i in range(n):
            hard[w, i] = 1 if post[i] <= np.float32(0.0) else 0
        iters[w] = it
        conv[w] = 1 if ok else 0


@njit(cache=True, nogil=True)
def decode_batch_i16(row_ptr, col_idx, mb, z, llrs, max_iters, early_term,
                     hard, iters, conv):
    n_rows = row_ptr.shape[0] - 1
    n = llrs.shape[1]
    maxdeg = 0
    for m in range(n_rows):
        d = row_ptr[m + 1] - row_ptr[m]
        if d > maxdeg:
            maxdeg = d
    post = np.empty(n, np.int16)
    min1 = np.empty(n_rows, np.int16)
    min2 = np.empty(n_rows, np.int16)
    amin = np.empty(n_rows, np.int8)
    sbits = np.empty(n_rows, np.uint32)
    sprod = np.empty(n_rows, np.uint8)
    zrow = np.empty(maxdeg, np.int16)

    for w in range(llrs.shape[0]):
        for i in range(n):
            post[i] = llrs[w, i]
        for m in range(n_rows):
            min1[m] = 0
            min2[m] = 0
            amin[m] = 0
            sbits[m] = 0
            sprod[m] = 0
        it = 0
        ok = False
        for k in range(max_iters):
            for t in range(mb):
                for m in range(t * z, (t + 1) * z):
                    lo = row_ptr[m]
                    deg = row_ptr[m + 1] - lo
                    m1 = min1[m]
                    m2 = min2[m]
                    am = amin[m]
                    sb = np.int64(sbits[m])
                    sp = np.int64(sprod[m])
                    nm1 = np.int16(32767)
                    nm2 = np.int16(32767)
                    nam = 0
                    nsb = np.int64(0)
                    nsp = np.int64(0)
                    for j in range(deg):
                        mag = m2 if j == am else m1
                        lold = np.int16(-mag) if (sp ^ ((sb >> j) & 1)) == 1 else mag
                        zz = np.int16(post[col_idx[lo + j]] - lold)
                        zrow[j] = zz
                        a = np.int16(abs(zz))
                        if a < nm1:
                            nm2 = nm1
                            nm1 = a
                            nam = j
                        elif a < nm2:
                            nm2 = a
                        if zz < 0:
                            nsb |= np.int64(1) << j
                            nsp ^= 1
                    for j in range(deg):
                        mag = nm2 if j == nam else nm1
                        lnew = np.int16(-mag) if (nsp ^ ((nsb >> j) & 1)) == 1 else mag
                        post[col_idx[lo + j]] = np.int16(zrow[j] + lnew)
                    min1[m] = nm1
                    min2[m] = nm2
                    amin[m] = nam
                    sbits[m] = nsb
                    sprod[m] = nsp
            it = k + 1
            ok = True
            for m in range(n_rows):
                par = 0
                for p in range(row_ptr[m], row_ptr[m + 1]):
                    if post[col_idx[p]] <= 0:
                        par ^= 1
                if par == 1:
                    ok = False
                    break
            if ok and early_term != 0:
                break
        for i in range(n):
            hard[w, i] = 1 if post[i] <= 0 else 0
        iters[w] = it
        conv[w] = 1 if ok else 0
