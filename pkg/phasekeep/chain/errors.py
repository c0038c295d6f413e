"""Errors raised while building or evaluating a signal chain."""

from __future__ import annotations

from ..errors import PhaseKeepError


class ChainError(PhaseKeepError):
    """Base class for signal-chain errors."""

    pass


class TopologyError(ChainError):
    """Graph wiring is invalid (cycle, wrong in-degree, unknown node)."""

    pass


class ConstraintViolationError(ChainError):
    """A preset cannot satisfy a frequency constraint at a specific node."""

    def __init__(self, node: str, message: str):
        self.node = node
        super().__init__(f"{node}: {message}")


class ToothOutOfRangeError(ChainError):
    """Requested comb tooth lies outside the source's tooth range."""

    pass


class EmptyOutputError(ChainError):
    """A mixer passband removed every product."""

    def __init__(self, node: str):
        self.node = node
        super().__init__(f"{node}: passband removed all mixer products")


class LockError(ChainError):
    """A PLL found no tone, or more than one tone, inside its capture range."""

    def __init__(self, node: str, message: str):
        self.node = node
        super().__init__(f"{node}: {message}")


class ChainConfigurationError(ChainError):
    """Switches are not in the positions a transition needs."""

    pass
