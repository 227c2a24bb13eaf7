"""
Containment queries over a set family.
"""
import logging
from typing import Dict, FrozenSet, Iterable, List, Tuple

from ..schema.models import SetFamily, family_sets

# Set up logger
logger = logging.getLogger(__name__)


class FamilyIndex:
    """Element -> member postings for fast `sets_containing` lookups."""

    def __init__(self, family: SetFamily):
        self.family = family
        self.sets: Tuple[FrozenSet[int], ...] = family_sets(family)
        postings: Dict[int, List[int]] = {}
        for index, member in enumerate(family.members):
            for element in member:
                postings.setdefault(element, []).append(index)
        self._postings = {element: tuple(indices) for element, indices in postings.items()}

    def __len__(self) -> int:
        return len(self.sets)

    def sets_containing(self, s: Iterable[int]) -> List[int]:
        """Indices of members that contain every element of `s`, ascending."""
        elements = sorted(frozenset(s), key=lambda e: len(self._postings.get(e, ())))
        if not elements:
            return list(range(len(self.sets)))
        candidates = self._postings.get(elements[0], ())
        wanted = frozenset(elements)
        return [index for index in candidates if wanted <= self.sets[index]]


def sets_containing(family: SetFamily, s: Iterable[int]) -> List[int]:
    """Indices of the members of `family` that are supersets of `s`."""
    return FamilyIndex(family).sets_containing(s)
