"""Exception hierarchy.

Three families matter to the CLI exit-code contract: input problems
(exit 2), enumeration/orbit overflows (exit 3) and internal
inconsistencies detected by exact checks (exit 4).
"""


class OrigamistError(Exception):
    """Base class for all library errors."""


class InputError(OrigamistError):
    """Malformed user input (bad permutation data, bad JSON, ...)."""


class OverflowLimitError(OrigamistError):
    """A bounded enumeration exceeded its cap."""


class InconsistencyError(OrigamistError):
    """An exact internal consistency check failed."""


# -- input-ish ---------------------------------------------------------------

class NotConnected(InputError):
    """The two permutations do not act transitively."""


class DegreeMismatch(InputError):
    pass


# -- overflow ----------------------------------------------------------------

class EnumerationOverflow(OverflowLimitError):
    """Coset enumeration exceeded max_cosets before closing."""


class OrbitOverflow(OverflowLimitError):
    """An orbit BFS exceeded its cap."""


class ThinOrUnbounded(OverflowLimitError):
    """A matrix group appears to have infinite index (or is too big)."""


# -- inconsistency -----------------------------------------------------------

class NonUnimodular(InconsistencyError):
    """The induced alternating form on the quotient by its radical is
    not unimodular."""


class DegenerateForm(InconsistencyError):
    pass


class OrderMismatch(InconsistencyError):
    pass


class NotAMember(InconsistencyError):
    pass


class NotParabolic(InconsistencyError):
    pass


class NotInVeechGroup(InconsistencyError):
    pass


class PathNotClosed(InconsistencyError):
    pass


class RadicalDimensionMismatch(InconsistencyError):
    pass


class NotInvariant(InconsistencyError):
    """A subspace claimed invariant is moved by some generator."""


class RelatorViolation(InconsistencyError):
    """Generator images fail a relator word of the domain subgroup."""


class DivisibilityViolation(InconsistencyError):
    pass


class HyperbolicImage(InconsistencyError):
    """A parabolic generator maps to a hyperbolic element; no
    equivariant holomorphic map can exist for such data."""


class DegreeInconsistency(InconsistencyError):
    """Per-image-cusp ramification sums disagree."""


class UncoveredImageCusp(InconsistencyError):
    """Some cusp of the image group receives no parabolic at all."""


class InvalidParameters(InputError):
    pass


class InconsistentSpec(InconsistencyError):
    pass


class OutOfRange(InputError):
    pass
