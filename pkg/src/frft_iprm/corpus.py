"""The six-function piecewise test corpus.

Rational bumps and tanh fronts with one or two interior jumps, each paired
with the nearest complex singularity of every smooth piece (poles of the
rational pieces at +/- i/sqrt(scale), poles of tanh(s(x-x0)) at
x0 + i pi/(2s); the exponential piece of f6 is entire).  The singularity
lists feed the Bernstein ellipse parameters that predict each function's
reconstruction convergence rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from .reconstruct import BernsteinRate, PiecewiseFunction, min_bernstein_rate

__all__ = ["TestCorpus", "CorpusIntegrityError", "load_corpus", "CORPUS_VERSION"]

CORPUS_VERSION = "corpus-v1"

# how closely the evaluators' one-sided limits must reproduce the
# documented jump sizes before any experiment is allowed to run
JUMP_TOLERANCE = 1e-2


class CorpusIntegrityError(RuntimeError):
    """A corpus function's measured jumps disagree with its documentation."""


@dataclass(frozen=True)
class TestCorpus:
    """The named test functions and their per-piece singularity lists."""

    # not a pytest test class, despite the Test* name
    __test__ = False

    functions: MappingProxyType
    singularities: MappingProxyType
    version: str = CORPUS_VERSION

    @property
    def names(self) -> tuple:
        return tuple(self.functions)

    def function(self, name: str) -> PiecewiseFunction:
        try:
            return self.functions[name]
        except KeyError:
            raise KeyError(
                f"unknown corpus function {name!r}; available: {self.names}"
            ) from None

    def singularity_list(self, name: str) -> tuple:
        self.function(name)
        return self.singularities[name]

    def bernstein_rate(self, name: str) -> BernsteinRate:
        """Limiting Bernstein parameter of the named function."""
        return min_bernstein_rate(self.function(name), self.singularities[name])

    def verify(self, tolerance: float = JUMP_TOLERANCE) -> None:
        """Check every function's measured jumps against its documentation.

        Evaluates each piece at the breakpoint's two one-sided limits and
        compares with the documented jump sizes; raises
        CorpusIntegrityError on any disagreement.
        """
        for name, function in self.functions.items():
            measured = function.jumps()
            for b, got, expected in zip(
                function.breakpoints, measured, function.jump_sizes
            ):
                if abs(got - expected) > tolerance:
                    raise CorpusIntegrityError(
                        f"{name}: jump at x={b} measured {got:.6f}, "
                        f"documented {expected}"
                    )


def _f1_left(x):
    return 1.0 / (1.0 + 25.0 * np.square(x)) - 1.0


def _f1_right(x):
    return 1.0 / (1.0 + 25.0 * np.square(x)) + 1.0


def _f2_left(x):
    return 1.0 / (1.0 + 4.0 * np.square(x))


def _f2_right(x):
    return 1.0 / (1.0 + 4.0 * np.square(x - 0.3)) + 1.0


def _f3_outer(x):
    return 1.0 / (1.0 + 16.0 * np.square(x))


def _f3_middle(x):
    return 1.0 / (1.0 + 9.0 * np.square(x)) + 1.0


def _f4_left(x):
    return np.tanh(10.0 * x)


def _f4_right(x):
    return np.tanh(10.0 * x) + 2.0


def _f5_left(x):
    return np.tanh(6.0 * (x + 0.5)) - 1.0


def _f5_middle(x):
    return np.tanh(4.0 * x) + 1.0


def _f5_right(x):
    return np.tanh(6.0 * (x - 0.5)) + 1.0


def _f6_left(x):
    return np.tanh(8.0 * (x + 0.5))


def _f6_middle(x):
    return 1.0 / (1.0 + 16.0 * np.square(x))


def _f6_right(x):
    return np.exp(-5.0 * (x - 0.5))


_TANH2 = math.tanh(2.0)

_FUNCTIONS = {
    "f1": PiecewiseFunction(
        breakpoints=(0.0,),
        pieces=(_f1_left, _f1_right),
        jump_sizes=(2.0,),
    ),
    "f2": PiecewiseFunction(
        breakpoints=(0.3,),
        pieces=(_f2_left, _f2_right),
        jump_sizes=(2.0 - 1.0 / 1.36,),
    ),
    "f3": PiecewiseFunction(
        breakpoints=(-0.5, 0.5),
        pieces=(_f3_outer, _f3_middle, _f3_outer),
        jump_sizes=(1.0 / 3.25 + 0.8, 1.0 / 3.25 + 0.8),
    ),
    "f4": PiecewiseFunction(
        breakpoints=(0.0,),
        pieces=(_f4_left, _f4_right),
        jump_sizes=(2.0,),
    ),
    "f5": PiecewiseFunction(
        breakpoints=(-0.5, 0.5),
        pieces=(_f5_left, _f5_middle, _f5_right),
        jump_sizes=(2.0 - _TANH2, _TANH2),
    ),
    "f6": PiecewiseFunction(
        breakpoints=(-0.5, 0.5),
        pieces=(_f6_left, _f6_middle, _f6_right),
        jump_sizes=(0.2, 0.8),
    ),
}

# nearest complex singularity of each smooth piece (None: the piece is entire);
# rational pieces have poles on the imaginary axis of their bump center,
# tanh(s(x-x0)) its first pole at x0 + i pi/(2 s)
_SINGULARITIES = {
    "f1": (0.2j, 0.2j),
    "f2": (0.5j, 0.3 + 0.5j),
    "f3": (0.25j, (1.0 / 3.0) * 1j, 0.25j),
    "f4": ((math.pi / 20.0) * 1j, (math.pi / 20.0) * 1j),
    "f5": (
        -0.5 + (math.pi / 12.0) * 1j,
        (math.pi / 8.0) * 1j,
        0.5 + (math.pi / 12.0) * 1j,
    ),
    "f6": (-0.5 + (math.pi / 16.0) * 1j, 0.25j, None),
}

_CORPUS = TestCorpus(
    functions=MappingProxyType(_FUNCTIONS),
    singularities=MappingProxyType(_SINGULARITIES),
)


def load_corpus(verify: bool = True) -> TestCorpus:
    """The six-function corpus singleton, self-checked by default."""
    if verify:
        _CORPUS.verify()
    return _CORPUS
