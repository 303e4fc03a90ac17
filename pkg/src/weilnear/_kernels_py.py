"""Pure-Python arithmetic kernels.

These two loops (structure-constant contraction and term convolution) are
where essentially all time goes; a compiled twin lives in ``_ckernels.pyx``.
Both backends must produce identical, exactly normalized rationals.
"""

from fractions import Fraction

BACKEND = "python"

_ZERO = Fraction(0)


def build_table(pair_rows):
    """Backend-specific multiplication table; here the sparse rows as-is.

    ``pair_rows[i][j]`` is a tuple of ``(k, c)`` pairs meaning that the
    basis product ``e_i * e_j`` contributes ``c`` to coordinate ``k``.
    """
    return pair_rows


def ael_mul(ca, cb, table, dim):
    """Multiply two coordinate vectors through the structure constants."""
    out = [_ZERO] * dim
    for i, a in enumerate(ca):
        if not a:
            continue
        row = table[i]
        for j, b in enumerate(cb):
            if not b:
                continue
            cell = row[j]
            if not cell:
                continue
            ab = a * b
            for k, c in cell:
                out[k] += ab * c
    return out


def apoly_mul_terms(terms_a, terms_b, table, dim):
    """Convolve two term maps ``{exponent tuple: coordinate tuple}``."""
    out = {}
    for ea, ca in terms_a.items():
        for eb, cb in terms_b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            prod = ael_mul(ca, cb, table, dim)
            acc = out.get(key)
            if acc is None:
                out[key] = prod
            else:
                for k in range(dim):
                    if prod[k]:
                        acc[k] += prod[k]
    return {e: tuple(c) for e, c in out.items() if any(c)}
