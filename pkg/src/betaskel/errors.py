"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: InputError -> 2,
UnsupportedError -> 3, InternalError -> 4.
"""

from __future__ import annotations


class SkelError(Exception):
    """Base class for all package-specific errors."""


class InputError(SkelError):
    """Malformed or inconsistent user input (files, flags, point sets)."""


class UnsupportedError(SkelError):
    """Valid request outside the supported configuration space."""


class InternalError(SkelError):
    """An invariant the implementation guarantees was observed broken."""


class NestingViolation(InternalError):
    """Edge sets of a lens-based beta spectrum failed to nest.

    Carries the offending edge and the adjacent beta values; raised by
    beta_spectrum because a violation indicates an implementation bug,
    not valid output.
    """

    def __init__(self, edge: tuple[int, int], beta_small: float, beta_large: float):
        self.edge = edge
        self.beta_small = beta_small
        self.beta_large = beta_large
        super().__init__(
            f"edge {edge} present at beta={beta_large} but absent at "
            f"beta={beta_small}; lens-based skeletons must be nested"
        )
