"""Exception hierarchy shared by every solver module."""

from __future__ import annotations


class AdvDiffError(Exception):
    """Base class for domain errors (bad scenario, unstable run, ...)."""


class ScenarioError(AdvDiffError, ValueError):
    """A scenario or grid violates one of its invariants."""


class NonPositiveDiffusivity(ScenarioError):
    pass


class ExponentOverflow(ScenarioError):
    pass


class IncompatibleIC(ScenarioError):
    pass


class InvalidInitialCondition(ScenarioError):
    pass


class ConfigError(ScenarioError):
    pass


class DegenerateGrid(ScenarioError):
    pass


class InterfaceOffGrid(ScenarioError):
    pass


class NotSineMode(AdvDiffError, TypeError):
    pass


class QuadratureNotConverged(AdvDiffError, ArithmeticError):
    pass


class UnstableParameters(AdvDiffError):
    pass


class LengthMismatch(AdvDiffError, ValueError):
    pass


class EmptySeries(AdvDiffError, ValueError):
    pass


class SinkWriteFailure(AdvDiffError, OSError):
    pass
