"""Exception types; each maps to a stable CLI exit code."""


class InvfacError(Exception):
    exit_code = 1


class SpecError(InvfacError, ValueError):
    """Problem specification violates an invariant (unbalanced, bad lengths, mu != 1...)."""

    exit_code = 3


class UnbalancedSpecError(SpecError):
    pass


class PoleError(InvfacError, ValueError):
    """Evaluation point sits on an excluded lattice or a gamma pole."""

    exit_code = 4


class BranchCutError(InvfacError, ValueError):
    """Argument lies on the branch cut of the principal log-gamma."""

    exit_code = 4


class RangeError(InvfacError, IndexError):
    """Requested order exceeds what was computed or what a route supports."""

    exit_code = 5


class AmbiguousError(InvfacError, ArithmeticError):
    """A float-mode coincidence decision fell inside the tolerance band."""

    exit_code = 3
