"""The concretizes linker.

Three edge families tie the levels together: every restricted frame
concretizes its frame, every frame instance concretizes its frame, and a
frame instance concretizes a restricted frame when it satisfies all of its
restrictions.  Satisfaction is taxonomy subsumption: the bound value must be
an entity carrying at least one type whose reflexive-transitive hypernym
closure contains the restriction type.  Literal bindings never satisfy a
restriction, and a restriction on an unbound element never matches.

The SubsumptionIndex precomputes the ancestor closure per taxonomy node plus
an entity -> types snapshot, so matching is set lookups.  Candidate FERs are
pruned by shared frame; the result provably equals the unpruned double loop
because frame equality is the first matching condition.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

from .model import Fer, FrameInstance, Literal, TaxonomyType
from .errors import MissingNodeError
from .store import Store

logger = logging.getLogger(__name__)


@dataclass
class LinkReport:
    fer_to_sf: int = 0
    fi_to_sf: int = 0
    fi_to_fer: int = 0

    def to_json(self) -> dict:
        return {
            "ferToSf": self.fer_to_sf,
            "fiToSf": self.fi_to_sf,
            "fiToFer": self.fi_to_fer,
        }


class SubsumptionIndex:
    """Reflexive-transitive hypernym closure plus entity type snapshot.

    Construction is cycle tolerant (a fixpoint pass covers knots Kahn's
    algorithm cannot order) so the linker can run before freeze-time
    validation rejects a cyclic taxonomy.
    """

    def __init__(
        self,
        ancestors: dict[str, frozenset[str]],
        entity_types: dict[str, frozenset[str]],
    ):
        self.ancestors = ancestors
        self.entity_types = entity_types

    @classmethod
    def build(cls, store: Store) -> "SubsumptionIndex":
        pending = {
            tid: [p for p in node.hypernyms if p in store.taxonomy]
            for tid, node in store.taxonomy.items()
        }
        remaining = {tid: len(parents) for tid, parents in pending.items()}
        dependents: dict[str, list[str]] = defaultdict(list)
        for tid, parents in pending.items():
            for parent in parents:
                dependents[parent].append(tid)

        ancestors: dict[str, set[str]] = {}
        queue = sorted(tid for tid, count in remaining.items() if count == 0)
        while queue:
            tid = queue.pop()
            closure = {tid}
            for parent in pending[tid]:
                closure |= ancestors[parent]
            ancestors[tid] = closure
            for child in dependents.get(tid, ()):
                remaining[child] -= 1
                if remaining[child] == 0:
                    queue.append(child)

        stuck = sorted(set(pending) - set(ancestors))
        if stuck:
            logger.warning("taxonomy has %d nodes in hypernym cycles", len(stuck))
            for tid in stuck:
                ancestors[tid] = {tid}
            changed = True
            while changed:
                changed = False
                for tid in stuck:
                    grown = ancestors[tid] | {
                        a for p in pending[tid] for a in ancestors[p]
                    }
                    if grown != ancestors[tid]:
                        ancestors[tid] = grown
                        changed = True

        entity_types = {
            en_id: frozenset(entity.types) for en_id, entity in store.entities.items()
        }
        return cls(
            {tid: frozenset(closure) for tid, closure in ancestors.items()},
            entity_types,
        )

    def ancestors_of(self, tax_id: str) -> frozenset[str]:
        found = self.ancestors.get(tax_id)
        if found is None:
            raise MissingNodeError(f"taxonomy type not indexed: {tax_id}")
        return found


def _tax_id(value: "TaxonomyType | str") -> str:
    return value.id if isinstance(value, TaxonomyType) else value


def subsumes(
    index: SubsumptionIndex,
    ancestor: "TaxonomyType | str",
    descendant: "TaxonomyType | str",
) -> bool:
    """True iff ancestor is in the descendant's hypernym closure."""
    ancestor_id = _tax_id(ancestor)
    if ancestor_id not in index.ancestors:
        raise MissingNodeError(f"taxonomy type not indexed: {ancestor_id}")
    return ancestor_id in index.ancestors_of(_tax_id(descendant))


def fi_matches_fer(index: SubsumptionIndex, fi: FrameInstance, fer: Fer) -> bool:
    """Frame equality plus per-restriction subsumption of the bound entity."""
    if fi.frame != fer.frame:
        return False
    for element, required in fer.restrictions:
        value = fi.bindings.get(element)
        if value is None or isinstance(value, Literal):
            return False
        types = index.entity_types.get(value, frozenset())
        if not any(
            required in index.ancestors.get(t, frozenset((t,))) for t in types
        ):
            return False
    return True


def link_all(store: Store) -> LinkReport:
    """Insert the full concretizes edge set.

    Counts report matching pairs, so a second run reports the same numbers
    while inserting nothing new.
    """
    report = LinkReport()
    index = SubsumptionIndex.build(store)

    for fer_id in sorted(store.fers):
        store.put_edge("concretizes", fer_id, store.fers[fer_id].frame, provenance="linker")
        report.fer_to_sf += 1

    fers_by_frame: dict[str, list[str]] = defaultdict(list)
    for fer_id, fer in store.fers.items():
        fers_by_frame[fer.frame].append(fer_id)

    for fi_id in sorted(store.instances):
        fi = store.instances[fi_id]
        store.put_edge("concretizes", fi_id, fi.frame, provenance="linker")
        report.fi_to_sf += 1
        for fer_id in sorted(fers_by_frame.get(fi.frame, ())):
            if fi_matches_fer(index, fi, store.fers[fer_id]):
                store.put_edge("concretizes", fi_id, fer_id, provenance="linker")
                report.fi_to_fer += 1
    return report
