from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of one exhaustive check.

    ``holds`` is None when the check does not apply (a precondition such as
    unity failed). A failing verdict always carries ``witness``: the element
    or ideal indices at which the scan broke, in scan order.
    """

    name: str
    holds: bool | None
    witness: tuple[int, ...] | None = None
    note: str = ""

    def __post_init__(self):
        if self.holds is False and self.witness is None:
            raise ValueError(f"{self.name}: failing verdict needs a witness")

    @classmethod
    def ok(cls, name: str, note: str = "") -> "AxiomVerdict":
        return cls(name, True, None, note)

    @classmethod
    def fail(cls, name: str, witness, note: str = "") -> "AxiomVerdict":
        return cls(name, False, tuple(int(w) for w in witness), note)

    @classmethod
    def not_applicable(cls, name: str, note: str = "") -> "AxiomVerdict":
        return cls(name, None, None, note)

    @property
    def applicable(self) -> bool:
        return self.holds is not None

    def render(self) -> str:
        if self.holds is None:
            state = "n/a"
        else:
            state = "true" if self.holds else "false"
        extra = f" witness={list(self.witness)}" if self.witness is not None else ""
        note = f" ({self.note})" if self.note else ""
        return f"{self.name}: {state}{extra}{note}"


def first_pair(mask) -> tuple[int, ...] | None:
    """Indices of the first False entry of a boolean array, in C order."""
    bad = np.argwhere(~np.asarray(mask, dtype=bool))
    return None if bad.size == 0 else tuple(int(i) for i in bad[0])
