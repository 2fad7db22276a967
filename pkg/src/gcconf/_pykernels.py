"""Pure-Python sparse polynomial kernels.

A polynomial is a dict mapping a packed exponent key to a nonzero rational
coefficient.  Keys pack the exponents of (∂, λ, μ) into one int, 21 bits per
variable, so multiplying monomials is integer addition of keys.
"""

BITS = 21
MASK = (1 << BITS) - 1


def pack(e0, e1, e2):
    return e0 | (e1 << BITS) | (e2 << (2 * BITS))


def unpack(key):
    return key & MASK, (key >> BITS) & MASK, key >> (2 * BITS)


def add(a, b, c=1):
    """Return a + c*b."""
    if not b:
        return dict(a)
    r = dict(a)
    if c == 1:
        for k, v in b.items():
            s = r.get(k)
            s = v if s is None else s + v
            if s:
                r[k] = s
            else:
                del r[k]
    else:
        for k, v in b.items():
            s = r.get(k)
            s = c * v if s is None else s + c * v
            if s:
                r[k] = s
            else:
                r.pop(k, None)
    return r


def scale(a, c):
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def mul(a, b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    r = {}
    get = r.get
    bitems = list(b.items())
    for ka, va in a.items():
        for kb, vb in bitems:
            k = ka + kb
            s = get(k)
            r[k] = va * vb if s is None else s + va * vb
    return {k: v for k, v in r.items() if v}
