"""Global lookup: resolve pairwise relations into superlines with lane offsets."""

from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import TopologyError
from ..types import CandidateLine, RelativeLookup, Superline, TopologyConfig
from ..utils.geometry import greedy_chain_order
from ..utils.logger import OdrLogger, null_logger
from .lookup import relation_delta, relative_lookup


class OffsetUnionFind:
    """Union-find whose nodes carry an integer offset relative to their root."""

    def __init__(self, nodes: Iterable[int]):
        self.parent: Dict[int, int] = {n: n for n in nodes}
        self.delta: Dict[int, int] = {n: 0 for n in self.parent}

    def find(self, node: int) -> Tuple[int, int]:
        """Root of node and offset(node) - offset(root)."""
        path = []
        while self.parent[node] != node:
            path.append(node)
            node = self.parent[node]
        root = node
        # compress: walk back from the node closest to the root
        for n in reversed(path):
            parent = self.parent[n]
            if parent != root:
                self.delta[n] += self.delta[parent]
            self.parent[n] = root
        return root, 0 if not path else self.delta[path[0]]

    def offset(self, node: int) -> int:
        return self.find(node)[1]

    def union(self, a: int, b: int, delta: int) -> bool:
        """
        Record offset(b) - offset(a) == delta.

        Returns:
            False when the relation contradicts the ones already merged
        """
        root_a, off_a = self.find(a)
        root_b, off_b = self.find(b)
        if root_a == root_b:
            return off_b - off_a == delta
        # offset(root_b) - offset(root_a) follows from the requested delta
        self.parent[root_b] = root_a
        self.delta[root_b] = off_a + delta - off_b
        return True

    def components(self) -> Dict[int, List[int]]:
        groups: Dict[int, List[int]] = defaultdict(list)
        for node in sorted(self.parent):
            groups[self.find(node)[0]].append(node)
        return dict(groups)


def global_lookup(
    lookups: Dict[int, RelativeLookup],
    lines: Sequence[CandidateLine],
    logger: Optional[OdrLogger] = None,
) -> List[Superline]:
    """
    Merge candidate lines into superlines with integer lane offsets.

    Relations are applied strongest support first; one that contradicts the
    offsets already implied is dropped with a warning. When the relation graph
    falls apart into several components, the one holding the most cluster
    centers is kept. Offsets are shifted so the leftmost superline is 0.

    Args:
        lookups: Relative lookups per line id
        lines: The candidate lines the lookups refer to
        logger: Optional category logger

    Returns:
        Superlines ordered by lane offset, ids equal to their offsets
    """
    log = logger or null_logger()
    if not lines:
        return []
    by_id = {l.id: l for l in lines}
    uf = OffsetUnionFind(by_id)

    relations = [
        (entry.support, source, entry)
        for source, lookup in lookups.items()
        for entry in lookup.entries
        if source in by_id and entry.line_id in by_id
    ]
    relations.sort(key=lambda r: (-r[0], r[1], r[2].line_id))
    dropped = 0
    for _, source, entry in relations:
        if not uf.union(source, entry.line_id, relation_delta(entry)):
            dropped += 1
            log.warn(
                "topology",
                "dropping inconsistent relation",
                source=source,
                other=entry.line_id,
                side=entry.side.value,
                steps=entry.steps,
                support=entry.support,
            )

    components = uf.components()
    weight = {root: sum(len(by_id[n]) for n in nodes) for root, nodes in components.items()}
    winner = min(components, key=lambda r: (-weight[r], min(components[r])))
    members = components[winner]
    if len(components) > 1:
        log.warn(
            "topology",
            "keeping the largest relation component",
            components=len(components),
            kept_lines=len(members),
            dropped_lines=len(by_id) - len(members),
        )

    offsets = {n: uf.offset(n) for n in members}
    base = min(offsets.values())
    groups: Dict[int, List[int]] = defaultdict(list)
    for node in members:
        groups[offsets[node] - base].append(node)

    superlines = []
    for offset in sorted(groups):
        ids = sorted(groups[offset])
        centers = np.vstack([by_id[i].centers for i in ids])
        superlines.append(
            Superline(
                id=offset,
                member_line_ids=ids,
                lane_offset=offset,
                merged_centers=centers[greedy_chain_order(centers)],
            )
        )
    log.info(
        "topology",
        "resolved superlines",
        lines=len(lines),
        relations=len(relations),
        dropped_relations=dropped,
        superlines=len(superlines),
    )
    return superlines


def check_contiguous(superlines: Sequence[Superline]) -> None:
    """Raise when lane offsets skip a value (a marking line is missing)."""
    offsets = sorted(s.lane_offset for s in superlines)
    if not offsets:
        raise TopologyError("no superlines to build a road from")
    missing = sorted(set(range(offsets[0], offsets[-1] + 1)) - set(offsets))
    if missing:
        neighbors = [i for s in superlines for i in s.member_line_ids
                     if s.lane_offset in {m - 1 for m in missing} | {m + 1 for m in missing}]
        raise TopologyError(f"lane offsets {missing} have no marking line", line_ids=neighbors)


def resolve_topology(
    lines: Sequence[CandidateLine],
    cfg: TopologyConfig,
    logger: Optional[OdrLogger] = None,
) -> Tuple[List[Superline], Dict[int, RelativeLookup]]:
    """Relative lookups followed by the global lookup."""
    lookups = relative_lookup(lines, cfg)
    superlines = global_lookup(lookups, lines, logger)
    return superlines, lookups


def write_relations_csv(lookups: Dict[int, RelativeLookup], path: Union[str, Path]) -> Path:
    """Write the relation graph as an edge list."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("line_id,other_id,side,distance,steps,support,residual\n")
        for source in sorted(lookups):
            for e in lookups[source].entries:
                fh.write(
                    f"{source},{e.line_id},{e.side.value},{e.distance:.17g},"
                    f"{e.steps},{e.support},{e.residual:.17g}\n"
                )
    return path
