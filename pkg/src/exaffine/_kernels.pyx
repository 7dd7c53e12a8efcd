# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _kernels_py: same data layout, same results."""


cpdef dict poly_add(dict a, dict b):
    cdef dict out
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


cpdef dict poly_sub(dict a, dict b):
    cdef dict out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


cpdef dict poly_scale(dict a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


cpdef dict poly_mul_into(dict acc, dict a, dict b, tuple ctx):
    cdef long jbits, jmask, m, e
    cdef list ptab
    cdef dict cache
    jbits, jmask, bias, latmask, m, ptab, coc, cache = ctx
    if coc is None and m == 1:
        kbias = bias << jbits
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb - kbias
                v = acc.get(k, 0) + ca * cb
                if v:
                    acc[k] = v
                else:
                    del acc[k]
        return acc
    for ka, ca in a.items():
        ja = ka & jmask
        ha = ka >> jbits
        la = ha & latmask
        for kb, cb in b.items():
            hb = kb >> jbits
            e = ja + (kb & jmask)
            if coc is not None:
                pair = (la, hb & latmask)
                x = cache.get(pair)
                if x is None:
                    x = coc(la, hb & latmask)
                    cache[pair] = x
                e += <long>x
            h = (ha + hb - bias) << jbits
            c = ca * cb
            for jj, pc in ptab[e % m]:
                k = h | jj
                v = acc.get(k, 0) + c * pc
                if v:
                    acc[k] = v
                else:
                    del acc[k]
    return acc


cpdef dict poly_mul(dict a, dict b, tuple ctx):
    return poly_mul_into({}, a, b, ctx)


cpdef list mat_mul(list A, list B, tuple ctx):
    cdef list out = []
    cdef dict row, acc, p
    for row in A:
        acc = {}
        for k, a in row.items():
            for j, b in (<dict>B[k]).items():
                p = acc.get(j)
                if p is None:
                    p = {}
                    acc[j] = p
                poly_mul_into(p, a, b, ctx)
        out.append({j: p for j, p in acc.items() if p})
    return out


cpdef list mat_add(list A, list B):
    cdef list out = []
    cdef dict row
    for ra, rb in zip(A, B):
        row = dict(ra)
        for j, p in (<dict>rb).items():
            q = row.get(j)
            s = p if q is None else poly_add(q, p)
            if s:
                row[j] = s
            else:
                row.pop(j, None)
        out.append(row)
    return out
