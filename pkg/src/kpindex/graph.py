"""Candidate co-occurrence multigraph with document and domain edge layers.

Each target document gets one undirected multigraph. PRESENT nodes are the
document's own candidates, linked by DOCUMENT edges (within-window
co-occurrence counts). Neighbor documents contribute a second, parallel
DOMAIN layer: similarity-scaled co-occurrence evidence between present
candidates, plus new ABSENT nodes for candidates that only the neighbors
contain. A pair of nodes can carry at most one edge per layer.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum

from .corpus import Corpus, Candidate, Document
from .similarity import NeighborSet


class Layer(Enum):
    DOCUMENT = "document"
    DOMAIN = "domain"


class Origin(Enum):
    PRESENT = "present"
    ABSENT = "absent"


@dataclass
class NodeInfo:
    origin: Origin
    source_docs: set[str] = field(default_factory=set)
    surfaces: Counter = field(default_factory=Counter)
    first_offset: dict[str, int] = field(default_factory=dict)


@dataclass
class MultiEdge:
    u: str
    v: str
    layer: Layer
    weight: float
    provenance: set[str] = field(default_factory=set)


class SemMultiGraph:
    """Undirected multigraph over candidate keys, two weighted edge layers."""

    def __init__(self) -> None:
        self.nodes: dict[str, NodeInfo] = {}
        self._edges: dict[tuple[str, str], dict[Layer, MultiEdge]] = {}

    def add_node(self, key: str, info: NodeInfo) -> None:
        self.nodes[key] = info

    def add_edge(self, u: str, v: str, layer: Layer, weight: float,
                 provenance: set[str]) -> None:
        """Accumulate weight onto the (pair, layer) edge; self-loops rejected."""
        if u == v:
            raise ValueError(f"self-loop on {u!r}")
        if weight <= 0:
            raise ValueError("edge weight must be positive")
        if u not in self.nodes or v not in self.nodes:
            raise KeyError("both endpoints must be nodes")
        pair = (u, v) if u < v else (v, u)
        layers = self._edges.setdefault(pair, {})
        edge = layers.get(layer)
        if edge is None:
            layers[layer] = MultiEdge(pair[0], pair[1], layer, weight, set(provenance))
        else:
            edge.weight += weight
            edge.provenance |= provenance

    def edge(self, u: str, v: str, layer: Layer) -> MultiEdge | None:
        pair = (u, v) if u < v else (v, u)
        return self._edges.get(pair, {}).get(layer)

    def edges(self, layer: Layer | None = None) -> list[MultiEdge]:
        """All edges in canonical (endpoint, layer) order."""
        out = []
        for pair in sorted(self._edges):
            for lay in (Layer.DOCUMENT, Layer.DOMAIN):
                if layer is not None and lay is not layer:
                    continue
                edge = self._edges[pair].get(lay)
                if edge is not None:
                    out.append(edge)
        return out

    def pair_weight(self, u: str, v: str) -> float:
        """Summed weight across both layers for one node pair."""
        pair = (u, v) if u < v else (v, u)
        return sum(e.weight for e in self._edges.get(pair, {}).values())

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self, layer: Layer | None = None) -> int:
        return len(self.edges(layer))

    def keys_with_origin(self, origin: Origin) -> list[str]:
        return sorted(k for k, info in self.nodes.items() if info.origin is origin)


def _count_window_pairs(starts_a: list[int], starts_b: list[int],
                        window: int) -> int:
    return sum(1 for a in starts_a for b in starts_b if abs(a - b) <= window)


def build_document_graph(doc: Document, candidates: dict[str, Candidate],
                         window: int = 10) -> SemMultiGraph:
    """One PRESENT node per candidate; DOCUMENT edges weighted by the number
    of occurrence pairs whose start offsets differ by at most `window`.

    Sentence breaks limit candidate spans, not co-occurrence.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    g = SemMultiGraph()
    keys = sorted(candidates)
    for key in keys:
        cand = candidates[key]
        g.add_node(key, NodeInfo(
            origin=Origin.PRESENT,
            source_docs={doc.id},
            surfaces=Counter(cand.surfaces),
            first_offset=dict(cand.first_offset),
        ))
    for i, a in enumerate(keys):
        starts_a = [s for s, _ in candidates[a].occurrences]
        for b in keys[i + 1:]:
            starts_b = [s for s, _ in candidates[b].occurrences]
            w = _count_window_pairs(starts_a, starts_b, window)
            if w > 0:
                g.add_edge(a, b, Layer.DOCUMENT, float(w), {doc.id})
    return g


def cooccurrence_in(neighbor_doc: Document, key_a: str, key_b: str,
                    window: int = 10,
                    stopwords: frozenset[str] = frozenset()) -> int:
    """Within-window occurrence pairs of two candidate keys in one document."""
    from .corpus import key_occurrences

    starts_a = key_occurrences(neighbor_doc, key_a, stopwords)
    if not starts_a:
        return 0
    starts_b = key_occurrences(neighbor_doc, key_b, stopwords)
    return _count_window_pairs(starts_a, starts_b, window)


def _neighbor_starts(cands: dict[str, Candidate], key: str) -> list[int]:
    cand = cands.get(key)
    return [s for s, _ in cand.occurrences] if cand is not None else []


def expand_graph(g: SemMultiGraph, doc: Document, nbrs: NeighborSet,
                 corpus: Corpus, window: int = 10, lambda_domain: float = 1.0,
                 absent_quota: int = 10, max_len: int = 3) -> SemMultiGraph:
    """Enrich the document graph in place with neighbor evidence.

    (a) For every pair of PRESENT keys co-occurring in a neighbor with
        similarity s, accumulate a DOMAIN edge of lambda_domain * s * count.
    (b) Score candidates that occur only in neighbors by sum(s_i * freq_i),
        admit up to absent_quota of them as ABSENT nodes (best score first,
        ties by key), wiring each to PRESENT and previously admitted ABSENT
        nodes with the same DOMAIN weight rule. A candidate that would end
        up with no positive-weight edge is skipped, since every ABSENT node
        must stay connected to the rest of the graph.

    The DOCUMENT layer is never touched. With lambda_domain == 0 or no
    neighbors the graph is returned unchanged.
    """
    if lambda_domain < 0:
        raise ValueError("lambda_domain must be >= 0")
    if absent_quota < 0:
        raise ValueError("absent_quota must be >= 0")
    if lambda_domain == 0 or not nbrs.neighbors:
        return g

    present = g.keys_with_origin(Origin.PRESENT)
    present_set = set(present)
    neighbor_cands = {nid: corpus.candidates_for(nid, max_len)
                      for nid, _ in nbrs.neighbors}

    # (a) domain evidence between present candidates
    for nid, sim in nbrs.neighbors:
        if sim <= 0:
            continue
        cands = neighbor_cands[nid]
        shared = sorted(present_set & cands.keys())
        for i, a in enumerate(shared):
            starts_a = _neighbor_starts(cands, a)
            for b in shared[i + 1:]:
                c = _count_window_pairs(starts_a, _neighbor_starts(cands, b), window)
                if c > 0:
                    g.add_edge(a, b, Layer.DOMAIN, lambda_domain * sim * c, {nid})

    # (b) absent-candidate admission
    if absent_quota == 0:
        return g
    scores: dict[str, float] = defaultdict(float)
    contributors: dict[str, set[str]] = defaultdict(set)
    for nid, sim in nbrs.neighbors:
        if sim <= 0:
            continue
        for key, cand in neighbor_cands[nid].items():
            if key in present_set:
                continue
            scores[key] += sim * cand.frequency
            contributors[key].add(nid)
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))

    admitted: list[str] = []
    for key, score in ranked:
        if len(admitted) >= absent_quota:
            break
        if score <= 0:
            break
        links: dict[str, tuple[float, set[str]]] = {}
        for nid, sim in nbrs.neighbors:
            if sim <= 0 or nid not in contributors[key]:
                continue
            cands = neighbor_cands[nid]
            starts_key = _neighbor_starts(cands, key)
            for other in present + admitted:
                c = _count_window_pairs(starts_key, _neighbor_starts(cands, other),
                                        window)
                if c > 0:
                    w, prov = links.get(other, (0.0, set()))
                    links[other] = (w + lambda_domain * sim * c, prov | {nid})
        if not links:
            continue
        surfaces: Counter = Counter()
        for nid in sorted(contributors[key]):
            cand = neighbor_cands[nid].get(key)
            if cand is not None:
                surfaces.update(cand.surfaces)
        g.add_node(key, NodeInfo(origin=Origin.ABSENT,
                                 source_docs=set(contributors[key]),
                                 surfaces=surfaces))
        for other in sorted(links):
            w, prov = links[other]
            g.add_edge(key, other, Layer.DOMAIN, w, prov)
        admitted.append(key)
    return g


def weakly_connected_components(g: SemMultiGraph,
                                layer: Layer | None = None) -> list[set[str]]:
    """Connected components treating all (or one layer's) edges as undirected.

    Canonical order: components sorted by their smallest member key.
    """
    adjacency: dict[str, set[str]] = {k: set() for k in g.nodes}
    for edge in g.edges(layer):
        adjacency[edge.u].add(edge.v)
        adjacency[edge.v].add(edge.u)
    seen: set[str] = set()
    components: list[set[str]] = []
    for start in sorted(g.nodes):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in sorted(adjacency[node]):
                if nxt not in comp:
                    comp.add(nxt)
                    stack.append(nxt)
        seen |= comp
        components.append(comp)
    return components


def bridge_components(g: SemMultiGraph, beta: float = 2.0) -> SemMultiGraph:
    """Boost DOMAIN edges that bridge distinct DOCUMENT-layer components.

    Every DOMAIN edge whose endpoints fall in different components of the
    DOCUMENT-layer-only graph has its weight multiplied by beta; all other
    weights are untouched. beta == 1 is the identity.
    """
    if beta < 1:
        raise ValueError("beta must be >= 1")
    component_of: dict[str, int] = {}
    for idx, comp in enumerate(weakly_connected_components(g, Layer.DOCUMENT)):
        for key in comp:
            component_of[key] = idx
    for edge in g.edges(Layer.DOMAIN):
        if component_of[edge.u] != component_of[edge.v]:
            edge.weight *= beta
    return g


def to_dot(g: SemMultiGraph, name: str = "candidates") -> str:
    """DOT rendering for debugging: nodes tagged by origin, edges by layer:weight."""
    lines = [f'graph "{name}" {{']
    for key in sorted(g.nodes):
        info = g.nodes[key]
        lines.append(f'  "{key}" [label="{key}\\n({info.origin.value})"];')
    for edge in g.edges():
        lines.append(
            f'  "{edge.u}" -- "{edge.v}" '
            f'[label="{edge.layer.value}:{edge.weight:g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
