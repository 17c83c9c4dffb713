"""Graph-based keyword ranking.

Candidates become nodes of a directed co-occurrence graph (earlier word ->
later word, weighted by pair counts inside a sliding window over the original
token stream). Nodes are scored with weighted PageRank, the top share is kept,
and selected words that sit adjacent in the source text collapse into
keyphrases whose weight is the sum of the member scores.

Everything is deterministic: node iteration is sorted, and ties rank
lexicographically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .text_pipeline import (
    Candidate,
    TagLexicon,
    Token,
    candidate_filter,
    filter_stopwords,
    load_stopwords,
    pos_tag,
    tokenize,
)


class ExtractionError(Exception):
    """Base class for keyword-extraction failures."""


class InvalidWindow(ExtractionError):
    """Raised when the co-occurrence window is below 2."""


class EmptyGraph(ExtractionError):
    """Raised when PageRank is asked to score a graph without nodes."""


class EmptyExtraction(ExtractionError):
    """Raised when no candidate words survive the text pipeline."""


@dataclass
class KeywordGraph:
    """Directed co-occurrence graph: edge weights count within-window pairs."""

    nodes: set[str] = field(default_factory=set)
    edges: dict[tuple[str, str], int] = field(default_factory=dict)

    def add_edge(self, source: str, target: str) -> None:
        if source == target:
            return
        self.edges[(source, target)] = self.edges.get((source, target), 0) + 1


@dataclass(frozen=True)
class ScoredNode:
    norm: str
    score: float


@dataclass(frozen=True)
class RankedKeyword:
    """A keyword or keyphrase with its graph weight (sum of member scores for phrases)."""

    text: str
    weight: float


@dataclass
class PageRankResult:
    scores: list[ScoredNode]
    converged: bool
    iterations: int


@dataclass
class ExtractionConfig:
    """Tunables for the extraction pipeline.

    ``directed=False`` mirrors every co-occurrence edge for comparison runs.
    Stop-word and lexicon paths default to the bundled resources.
    """

    window: int = 2
    ratio: float = 1.0 / 3.0
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    directed: bool = True
    stopwords_path: str | Path | None = None
    lexicon_path: str | Path | None = None

    _stopwords: frozenset[str] | None = field(default=None, repr=False, compare=False)
    _lexicon: TagLexicon | None = field(default=None, repr=False, compare=False)

    def stopwords(self) -> frozenset[str]:
        if self._stopwords is None:
            self._stopwords = load_stopwords(self.stopwords_path)
        return self._stopwords

    def lexicon(self) -> TagLexicon:
        if self._lexicon is None:
            self._lexicon = TagLexicon.load(self.lexicon_path)
        return self._lexicon


@dataclass
class ExtractionOutcome:
    """extract() plus provenance: convergence flag, iteration and node counts."""

    keywords: list[RankedKeyword]
    converged: bool
    iterations: int
    candidate_count: int


def build_cooccurrence_graph(
    candidates: list[Candidate],
    token_stream: list[Token],
    window: int = 2,
    directed: bool = True,
) -> KeywordGraph:
    """Count ordered candidate pairs within ``window`` positions of the original stream.

    Two tokens co-occur when their positions differ by at most window-1, and
    the edge runs earlier -> later. Candidates that never pair stay as
    isolated nodes.
    """
    if window < 2:
        raise InvalidWindow(f"window must be >= 2, got {window}")

    graph = KeywordGraph()
    candidate_norms = {c.norm for c in candidates}
    graph.nodes.update(candidate_norms)

    # Occurrence list in stream order: (position, norm) of candidate tokens.
    occurrences = sorted(
        (pos, c.norm) for c in candidates for pos in c.positions
    )
    for i, (pos_i, norm_i) in enumerate(occurrences):
        for j in range(i + 1, len(occurrences)):
            pos_j, norm_j = occurrences[j]
            if pos_j - pos_i > window - 1:
                break
            graph.add_edge(norm_i, norm_j)
            if not directed:
                graph.add_edge(norm_j, norm_i)
    return graph


def pagerank(
    graph: KeywordGraph,
    damping: float = 0.85,
    tolerance: float = 1e-6,
    max_iterations: int = 100,
) -> PageRankResult:
    """Weighted PageRank over the co-occurrence graph.

    score(v) = (1 - d) + d * sum over in-neighbors u of
               w(u -> v) / sum_x w(u -> x) * score(u)

    Scores start at 1.0 and iterate until the largest per-node change drops
    below ``tolerance``. Dangling nodes keep the (1 - d) base and distribute
    nothing. Non-convergence is reported via the flag, not an error.
    """
    if not graph.nodes:
        raise EmptyGraph("cannot rank a graph with no nodes")

    nodes = sorted(graph.nodes)
    out_sum: dict[str, float] = {n: 0.0 for n in nodes}
    for (source, _target), weight in graph.edges.items():
        out_sum[source] += weight

    in_edges: dict[str, list[tuple[str, int]]] = {n: [] for n in nodes}
    for (source, target), weight in sorted(graph.edges.items()):
        in_edges[target].append((source, weight))

    scores = {n: 1.0 for n in nodes}
    base = 1.0 - damping
    converged = False
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        new_scores: dict[str, float] = {}
        for node in nodes:
            incoming = 0.0
            for source, weight in in_edges[node]:
                incoming += weight / out_sum[source] * scores[source]
            new_scores[node] = base + damping * incoming
        delta = max(abs(new_scores[n] - scores[n]) for n in nodes)
        scores = new_scores
        if delta < tolerance:
            converged = True
            break

    return PageRankResult(
        scores=[ScoredNode(norm=n, score=scores[n]) for n in nodes],
        converged=converged,
        iterations=iterations,
    )


def _rank_order(item: RankedKeyword | ScoredNode) -> tuple[float, str]:
    text = item.text if isinstance(item, RankedKeyword) else item.norm
    weight = item.weight if isinstance(item, RankedKeyword) else item.score
    return (-weight, text)


def select_keywords(scored: list[ScoredNode], ratio: float = 1.0 / 3.0) -> list[RankedKeyword]:
    """Keep the top ceil(ratio * N) nodes by score, ties lexicographic ascending."""
    if not scored:
        return []
    keep = math.ceil(ratio * len(scored))
    ordered = sorted(scored, key=_rank_order)
    return [RankedKeyword(text=s.norm, weight=s.score) for s in ordered[:keep]]


def collapse_keyphrases(
    keywords: list[RankedKeyword], token_stream: list[Token]
) -> list[RankedKeyword]:
    """Merge maximal runs of selected words that are adjacent in the original stream.

    Adjacency means consecutive positions, so any intervening token, including
    punctuation, breaks a run. A phrase's weight is the sum of its member
    scores; words consumed by any phrase stop appearing as standalone
    keywords. Result is re-sorted by weight descending.
    """
    score_of = {kw.text: kw.weight for kw in keywords}
    selected = set(score_of)

    phrases: dict[str, float] = {}
    consumed: set[str] = set()
    run: list[str] = []
    last_position: int | None = None

    def flush() -> None:
        if len(run) >= 2:
            text = " ".join(run)
            phrases[text] = sum(score_of[w] for w in run)
            consumed.update(run)
        run.clear()

    for token in token_stream:
        part_of_run = token.is_word and token.norm in selected
        adjacent = last_position is not None and token.position == last_position + 1
        # a repeated word restarts the run: "x x x" is the keyword x, not a phrase
        extends = part_of_run and adjacent and bool(run) and token.norm != run[-1]
        if extends:
            run.append(token.norm)
        else:
            flush()
            if part_of_run:
                run.append(token.norm)
        last_position = token.position
    flush()

    merged = [RankedKeyword(text=t, weight=w) for t, w in phrases.items()]
    merged.extend(kw for kw in keywords if kw.text not in consumed)
    merged.sort(key=_rank_order)
    return merged


def extract_detailed(text: str, config: ExtractionConfig | None = None) -> ExtractionOutcome:
    """Full pipeline with run metadata; see extract() for the plain keyword list."""
    config = config or ExtractionConfig()
    stream = tokenize(text)
    kept = filter_stopwords(stream, config.stopwords())
    words = [t for t in kept if t.is_word]
    tagged = pos_tag(words, config.lexicon())
    candidates = candidate_filter(tagged)
    if not candidates:
        raise EmptyExtraction("no noun/adjective candidates survive filtering")

    graph = build_cooccurrence_graph(
        candidates, stream, window=config.window, directed=config.directed
    )
    result = pagerank(
        graph,
        damping=config.damping,
        tolerance=config.tolerance,
        max_iterations=config.max_iterations,
    )
    keywords = select_keywords(result.scores, ratio=config.ratio)
    keywords = collapse_keyphrases(keywords, stream)
    return ExtractionOutcome(
        keywords=keywords,
        converged=result.converged,
        iterations=result.iterations,
        candidate_count=len(candidates),
    )


def extract(text: str, config: ExtractionConfig | None = None) -> list[RankedKeyword]:
    """Ranked keywords/keyphrases for a text: tokenize, filter, tag, graph, rank, collapse."""
    return extract_detailed(text, config).keywords
