from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of a reachability check.

    ``holds`` is None when the answer is unknown.  ``certificate`` carries
    the containing union member (holds), a counterexample word and start
    state (G/U failure), an uncovered initial state (I failure), or the
    sweep bound (F).
    """

    prop: str
    holds: Optional[bool]
    certificate: dict = field(default_factory=dict, compare=False)
