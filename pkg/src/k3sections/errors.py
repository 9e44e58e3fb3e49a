"""Exception types shared across the package."""


class K3SectionsError(Exception):
    """Base class for every error this package raises deliberately."""


class InvalidInputError(K3SectionsError, ValueError):
    """An input violates its documented invariants or bounds."""


class NonHyperbolicLatticeError(K3SectionsError, ValueError):
    """The witness search bound needs d^2 > 4n(g-1) and the input lacks it."""


class ArithmeticOverflowError(K3SectionsError, ArithmeticError):
    """An arithmetic step could not be carried out exactly.

    Python integers are exact and unbounded, so in-process arithmetic never
    wraps; this exists as a distinct, reportable failure mode (CLI exit
    code 4) for defensive wrappers around bulk computations.
    """
