"""Pure-Python implementations of the hot kernels.

Semantics are identical to the compiled ``_ckernels`` module; the test
suite runs both against each other.
"""

from fractions import Fraction


def axpy(target, source, scale):
    if not scale:
        return
    for k, x in source.items():
        v = target.get(k)
        if v is None:
            target[k] = x * scale
        else:
            v = v + x * scale
            if v:
                target[k] = v
            else:
                del target[k]


def reduce_vector(rows, vec):
    r = {k: Fraction(x) for k, x in vec.items() if x}
    for k in list(r):
        row = rows.get(k)
        if row is not None:
            c = r.get(k)
            if c:
                axpy(r, row, -c)
    return r


def digit_height(key, radix):
    h = 0
    while key:
        key, d = divmod(key, radix)
        h += d
    return h


def series_mul(a, b, radix, bound):
    """Truncated convolution of two sparse integer series over Q_+.

    Keys are coordinate tuples packed in base ``radix`` (``radix > bound``),
    so adding keys adds coordinates without carries as long as the total
    height stays within ``bound``; terms above ``bound`` are dropped.
    """
    hb = {k: digit_height(k, radix) for k in b}
    out = {}
    for ka, va in a.items():
        ha = digit_height(ka, radix)
        for kb, vb in b.items():
            if ha + hb[kb] > bound:
                continue
            k = ka + kb
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}
