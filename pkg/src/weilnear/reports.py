"""Per-identity result records and the generic sampled-check loop."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .sampling import derive_rng, derive_seed


@dataclass
class IdentityResult:
    """Outcome of checking one identity over a sample set."""

    identity: str
    passed: bool
    samples: int
    counterexample: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "status": "pass" if self.passed else "fail",
            "samples": self.samples,
            "counterexample": self.counterexample,
        }


def run_identity(name: str, seed: int, samples: int,
                 check: Callable) -> IdentityResult:
    """Run ``check(rng)`` over derived per-sample RNGs.

    ``check`` returns None on success or a counterexample dict; exceptions
    are not caught here (structural errors must surface, not count as
    identity failures).
    """
    for i in range(samples):
        rng = derive_rng(seed, i)
        ce = check(rng)
        if ce is not None:
            ce = {"sample": i, "replay_seed": derive_seed(seed, i), **ce}
            return IdentityResult(name, False, i + 1, ce)
    return IdentityResult(name, True, samples)


@dataclass
class SuiteReport:
    """All identity results for one named suite."""

    suite: str
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "results": [r.to_json() for r in self.results],
        }
