"""Pure-Python truncated product kernel.

Monomial keys are packed integers: exponent ``e_i`` sits at bit ``SLOT_BITS*i``
and the total degree sits above all exponents, at bit ``SLOT_BITS*d``.  Adding
keys multiplies monomials, and ``key < (maxdeg + 1) << (SLOT_BITS*d)`` is the
truncation test.
"""

SLOT_BITS = 12

NAME = "python"


def mul_many(pairs, d, maxdeg):
    """Sum of truncated products over ``pairs``.

    Each pair is ``(keys_a, coeffs_a, keys_b, coeffs_b)`` with keys sorted
    ascending and integer coefficients.  Returns ``{key: coeff}`` without zeros.
    """
    limit = (maxdeg + 1) << (SLOT_BITS * d)
    acc = {}
    get = acc.get
    for ka, ca, kb, cb in pairs:
        if not ka or not kb:
            continue
        for x, cx in zip(ka, ca):
            lim = limit - x
            if lim <= kb[0]:
                break
            for y, cy in zip(kb, cb):
                if y >= lim:
                    break
                k = x + y
                acc[k] = get(k, 0) + cx * cy
    return {k: v for k, v in acc.items() if v}
