"""
Background knowledge: temporal tiers plus explicit forbidden and required edges.

When tiers are set, every edge from a later tier into an earlier tier is
forbidden. Tiers are compiled into a single forbidden-pair set when the object
is created, and searches only ever consult that compiled set.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from ..errors import ConfigurationError, DuplicateTierMembershipError

Pair = Tuple[int, int]


@dataclass(frozen=True)
class Knowledge:
    """
    Parameters:
    -----------
    tiers : sequence of frozenset of int
        Ordered, disjoint tiers of variable ids (earliest first)
    forbidden : frozenset of (int, int)
        Explicitly forbidden directed pairs ``(x, y)`` meaning ``x -> y`` is banned
    required : frozenset of (int, int)
        Required directed pairs
    forbidden_within : frozenset of int
        Indices into ``tiers`` whose members may not be adjacent to each other
    """

    tiers: Tuple[FrozenSet[int], ...] = ()
    forbidden: FrozenSet[Pair] = frozenset()
    required: FrozenSet[Pair] = frozenset()
    forbidden_within: FrozenSet[int] = frozenset()
    compiled_forbidden: FrozenSet[Pair] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tiers = tuple(frozenset(t) for t in self.tiers)
        object.__setattr__(self, "tiers", tiers)
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        object.__setattr__(self, "required", frozenset(self.required))
        object.__setattr__(self, "forbidden_within", frozenset(self.forbidden_within))

        seen = {}
        for index, tier in enumerate(tiers):
            for node in tier:
                if node in seen:
                    raise DuplicateTierMembershipError(
                        f"Variable {node} appears in tiers {seen[node] + 1} and {index + 1}"
                    )
                seen[node] = index

        compiled = set(self.forbidden)
        for later in range(len(tiers)):
            for earlier in range(later):
                compiled.update((x, y) for x in tiers[later] for y in tiers[earlier])
        for index in self.forbidden_within:
            if not 0 <= index < len(tiers):
                raise ConfigurationError(f"Tier index {index + 1} does not exist")
            compiled.update((x, y) for x in tiers[index] for y in tiers[index] if x != y)
        object.__setattr__(self, "compiled_forbidden", frozenset(compiled))

        clash = self.compiled_forbidden & self.required
        if clash:
            x, y = sorted(clash)[0]
            raise ConfigurationError(f"Edge {x} -> {y} is both required and forbidden")

    @classmethod
    def empty(cls):
        return cls()

    @classmethod
    def from_tiers(cls, tiers: Sequence[Iterable[int]], forbidden=(), required=()):
        return cls(tuple(frozenset(t) for t in tiers), frozenset(forbidden), frozenset(required))

    @property
    def is_empty(self):
        return not self.compiled_forbidden and not self.required

    def is_forbidden(self, x: int, y: int) -> bool:
        """True if ``x -> y`` may not appear in any output."""
        return (x, y) in self.compiled_forbidden

    def is_required(self, x: int, y: int) -> bool:
        return (x, y) in self.required

    def adjacency_forbidden(self, x: int, y: int) -> bool:
        """Both orientations are banned, so the pair cannot be adjacent at all."""
        return self.is_forbidden(x, y) and self.is_forbidden(y, x)

    def tier_of(self, node: int) -> Optional[int]:
        for index, tier in enumerate(self.tiers):
            if node in tier:
                return index
        return None

    def relabeled(self, mapping) -> "Knowledge":
        """Translate every id through ``mapping`` (old id -> new id)."""
        return Knowledge(
            tuple(frozenset(mapping[n] for n in tier) for tier in self.tiers),
            frozenset((mapping[x], mapping[y]) for x, y in self.forbidden),
            frozenset((mapping[x], mapping[y]) for x, y in self.required),
            self.forbidden_within,
        )
