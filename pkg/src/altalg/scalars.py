"""Exact rational scalars.

Everything downstream assumes scalars are exact rationals with python-int
numerator/denominator access and a str() of the form "p" or "p/q".  gmpy2's
mpq satisfies this and is much faster on the big eliminations; plain
fractions.Fraction is the fallback so the package works without binary deps.
"""

try:
    from gmpy2 import mpq as rat

    def rat_num(q):
        return int(q.numerator)

    def rat_den(q):
        return int(q.denominator)

    HAVE_GMPY2 = True
except ImportError:
    from fractions import Fraction as rat

    def rat_num(q):
        return q.numerator

    def rat_den(q):
        return q.denominator

    HAVE_GMPY2 = False

ZERO = rat(0)
ONE = rat(1)


def rat_str(q) -> str:
    # both backends already print "p" / "p/q"; centralized for report output
    return str(q)
