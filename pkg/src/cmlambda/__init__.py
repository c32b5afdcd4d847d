"""Decide whether the Iwasawa lambda invariant of an imaginary quadratic
field exceeds 1 at a split prime p, two independent ways.

The unit-power route embeds a generator of the h-th power of a prime above
p into Z/p**2 and tests u**(p-1) = 1. The point-count route reduces a CM
elliptic curve mod p and reads #E(F_{p**(p-1)}) mod p**2 off the Frobenius
trace recurrence. The package cross-checks the two verdicts against each
other, and ties both to a truncated-factorial product criterion and to the
Euler and Glaisher special sequences.
"""

from .modmath import (
    ModulusMismatch,
    NotAResidue,
    NotInvertible,
    Residue,
    binomial_mod,
    hensel_lift_sqrt,
    is_prime,
    kronecker,
    mod_inv,
    mod_pow,
    primes_up_to,
    sqrt_mod_p,
)
from .quadfield import (
    ImagQuadField,
    NoSolution,
    NotFundamental,
    NotSquarefree,
    PrimeSplit,
    QuadInt,
    class_number,
    cornacchia,
    embed,
    make_field,
    prime_power_generator,
    split_data,
    splits,
)
from .gold import GoldVerdict, PreconditionViolated, gold_scan, gold_test
from .ellcurve import (
    BadReduction,
    ClassNumberUnsupported,
    CMCatalogEntry,
    CurveFp,
    OrdinaryScan,
    TheoremVerdict,
    TooLarge,
    TraceData,
    catalog_entry,
    char_sum,
    count_mod_p2,
    count_points_fp,
    count_points_fp2_bruteforce,
    count_points_fp_enum,
    curve_from_j,
    is_ordinary,
    j_invariant,
    load_catalog,
    scan_ordinary_prime,
    theorem1_check,
    trace_ap,
    trace_power_mod,
)
from .sequences import (
    CongruenceViolated,
    SequenceVerdict,
    equivalence_check,
    euler_mod,
    glaisher_mod,
    one_exceptional,
)

__version__ = "0.1.0"
