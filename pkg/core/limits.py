"""
Computation Limits
Size guards applied across the pipeline
"""

from dataclasses import dataclass, fields, replace
from typing import Dict

import config
from .errors import GuardExceededError


@dataclass(frozen=True)
class Limits:
    """Size guards; exceeding any of them is an explicit error"""

    max_order: int = config.DEFAULT_MAX_ORDER
    max_complex_size: int = config.DEFAULT_MAX_COMPLEX_SIZE
    max_group_size: int = config.DEFAULT_MAX_GROUP_SIZE
    max_states: int = config.DEFAULT_MAX_STATES
    max_transition_size: int = config.DEFAULT_MAX_TRANSITION_SIZE
    max_catalog_order: int = config.DEFAULT_MAX_CATALOG_ORDER

    def check(self, name: str, value: int) -> None:
        """
        Raise if value exceeds the named guard

        Args:
            name: Field name of the guard (e.g. 'max_order')
            value: Observed size

        Raises:
            GuardExceededError: if value > limit
        """
        limit = getattr(self, name)
        if value > limit:
            raise GuardExceededError(name, limit, value)

    def with_overrides(self, overrides: Dict[str, int]) -> "Limits":
        """Return a copy with the given guards replaced (None values ignored)"""
        known = {f.name for f in fields(self)}
        changes = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise KeyError(f"Unknown limit: {key}")
            changes[key] = int(value)
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_LIMITS = Limits()
