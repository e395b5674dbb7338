"""Search budgets and domain limits.

All defaults can be overridden at once through the ``GCHAIN_BUDGET``
environment variable, which replaces every node/partial-sum budget with
the given integer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

MAX_VALUE = 2**63 - 1

# steps store their summand indices with multiplicity, so cap how many
MAX_STEP_SUMMANDS = 2**20


@dataclass(frozen=True)
class Budgets:
    validate_partial_sums: int = 10**7
    exact_nodes: int = 10**8
    tree_nodes: int = 10**7
    enumerate_nodes: int = 10**9

    @classmethod
    def from_env(cls, env=None) -> "Budgets":
        env = os.environ if env is None else env
        raw = env.get("GCHAIN_BUDGET")
        if not raw:
            return cls()
        value = int(raw)
        if value < 1:
            raise ValueError("GCHAIN_BUDGET must be a positive integer")
        return replace(
            cls(),
            validate_partial_sums=value,
            exact_nodes=value,
            tree_nodes=value,
            enumerate_nodes=value,
        )


def budgets() -> Budgets:
    return Budgets.from_env()


# enumerate() default range by arity
def default_enumeration_max(g: int) -> int:
    return 10**4 if g <= 3 else 3 * 10**3
