"""Pure-Python sparse kernels for torus polynomials and matrices over them.

A polynomial is a dict {packed key: int | Fraction}.  A key packs the
lattice part, the formal-variable exponents and the power j of zeta as
``(fields << jbits) | j``; fields are biased 16-bit slots so adding two
keys adds the exponents.  ``ctx`` is the tuple built by ``TorusRing.ctx``:
(jbits, jmask, bias, latmask, m, ptab, cocycle_fn, cache).
"""


def poly_add(a, b):
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


def poly_sub(a, b):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def poly_scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def poly_mul_into(acc, a, b, ctx):
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
                    x = coc(pair[0], pair[1])
                    cache[pair] = x
                e += x
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


def poly_mul(a, b, ctx):
    return poly_mul_into({}, a, b, ctx)


def mat_mul(A, B, ctx):
    """Product of sparse matrices given as lists of row dicts {col: poly}."""
    out = []
    for row in A:
        acc = {}
        for k, a in row.items():
            for j, b in B[k].items():
                p = acc.get(j)
                if p is None:
                    p = acc[j] = {}
                poly_mul_into(p, a, b, ctx)
        out.append({j: p for j, p in acc.items() if p})
    return out


def mat_add(A, B):
    out = []
    for ra, rb in zip(A, B):
        row = dict(ra)
        for j, p in rb.items():
            q = row.get(j)
            s = p if q is None else poly_add(q, p)
            if s:
                row[j] = s
            else:
                row.pop(j, None)
        out.append(row)
    return out
