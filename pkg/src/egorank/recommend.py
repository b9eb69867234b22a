"""Recommendation index scoring and member ranking.

For every target document in a (category, sentiment) bucket, each cross
pair of distinct words between the ego's key document and the target
document contributes (count_key + count_target) / distance; the pair sum
times the documents' tf-idf cosine is the document's recommendation
index. A target scored against several key documents keeps its best
match, and a member is ranked by their best-scoring document.

Scoring is embarrassingly parallel over document pairs. All iteration is
over sorted words and sorted document ids, so results are bit-identical
for any input order or execution schedule.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, NamedTuple, Sequence

from .classify import Bucket
from .corpus import EGO_DATASETS, InteractedMember
from .errors import EmptyBucketError, InertDocumentError
from .lexproc import DocumentSet, TokenizedDoc
from .simdex import SimilarityModels, pair_distance, tfidf_cosine


class Normalization(str, Enum):
    RAW = "raw"    # plain pair sum; grows with document length
    MEAN = "mean"  # pair sum divided by the number of evaluated pairs


@dataclass(frozen=True)
class PairScore:
    word_mu: str
    word_tau: str
    n_value: float


@dataclass(frozen=True)
class DocumentScore:
    """Recommendation index of one target document against its best key doc."""

    target_doc_id: str
    key_doc_id: str
    owner_id: str
    sum_n: float
    ti_cs: float
    r_plus: float


class RankEntry(NamedTuple):
    member_id: str
    score: float
    best_doc_id: str


@dataclass
class MemberRanking:
    bucket: Bucket
    entries: list[RankEntry]


def pair_score(
    w_mu: str,
    w_tau: str,
    bow_mu: Mapping[str, int],
    bow_tau: Mapping[str, int],
    vectors,
) -> PairScore | None:
    """Score one cross word pair; None when either word has no vector."""
    v_mu = vectors.get(w_mu)
    v_tau = vectors.get(w_tau)
    if v_mu is None or v_tau is None:
        return None
    distance = pair_distance(v_mu, v_tau)
    return PairScore(w_mu, w_tau, (bow_mu[w_mu] + bow_tau[w_tau]) / distance)


def document_index(
    key_doc: TokenizedDoc,
    target_doc: TokenizedDoc,
    models: SimilarityModels,
    normalization: Normalization = Normalization.RAW,
    _distance_cache: dict | None = None,
) -> DocumentScore:
    """Full cross-pair recommendation index of one target against one key doc."""
    if key_doc.inert:
        raise InertDocumentError(key_doc.doc_id)
    if target_doc.inert:
        raise InertDocumentError(target_doc.doc_id)
    bow_mu = models.bow.row(key_doc.doc_id)
    bow_tau = models.bow.row(target_doc.doc_id)
    vectors = models.vectors.vectors
    cache = _distance_cache if _distance_cache is not None else {}

    total = 0.0
    pairs = 0
    for w_mu in sorted(bow_mu):
        v_mu = vectors.get(w_mu)
        if v_mu is None:
            continue
        c_mu = bow_mu[w_mu]
        for w_tau in sorted(bow_tau):
            v_tau = vectors.get(w_tau)
            if v_tau is None:
                continue
            key = (w_mu, w_tau) if w_mu <= w_tau else (w_tau, w_mu)
            distance = cache.get(key)
            if distance is None:
                distance = pair_distance(v_mu, v_tau)
                cache[key] = distance
            total += (c_mu + bow_tau[w_tau]) / distance
            pairs += 1

    if normalization is Normalization.MEAN:
        sum_n = total / pairs if pairs else 0.0
    else:
        sum_n = total
    ti_cs = tfidf_cosine(key_doc.doc_id, target_doc.doc_id, models.tfidf)
    return DocumentScore(
        target_doc_id=target_doc.doc_id,
        key_doc_id=key_doc.doc_id,
        owner_id=target_doc.owner_id,
        sum_n=sum_n,
        ti_cs=ti_cs,
        r_plus=sum_n * ti_cs,
    )


def score_bucket(
    document_set: DocumentSet,
    bucket: Bucket,
    models: SimilarityModels,
    *,
    normalization: Normalization = Normalization.RAW,
) -> list[DocumentScore]:
    """Score every member document in the bucket against the ego's key docs.

    Each target keeps the maximum index over all key documents (ties going
    to the lowest key doc id). Raises EmptyBucket naming the side that has
    no usable documents.
    """
    if document_set.buckets is None:
        raise RuntimeError("bucket index not built; run classify.assign_buckets first")
    doc_ids = document_set.buckets.get(bucket, [])
    keys: list[TokenizedDoc] = []
    targets: list[TokenizedDoc] = []
    for doc_id in sorted(doc_ids):
        doc = document_set.doc(doc_id)
        if doc.inert or doc.flagged_non_english:
            continue
        if doc.dataset_no in EGO_DATASETS:
            keys.append(doc)
        else:
            targets.append(doc)
    if not keys:
        raise EmptyBucketError("ego", bucket)
    if not targets:
        raise EmptyBucketError("member", bucket)

    cache: dict = {}
    scores: list[DocumentScore] = []
    for target in targets:
        best: DocumentScore | None = None
        for key_doc in keys:  # sorted by doc id, so ties keep the lowest
            candidate = document_index(key_doc, target, models, normalization, cache)
            if best is None or candidate.r_plus > best.r_plus:
                best = candidate
        scores.append(best)
    return scores


def rank_members(
    scores: Sequence[DocumentScore],
    members: Iterable[InteractedMember],
    bucket: Bucket | None = None,
) -> MemberRanking:
    """Aggregate document scores per member and sort.

    A member's score is the maximum index over their documents; members
    with no scored documents are excluded. Descending by score, ties by
    member id ascending.
    """
    member_ids = {m.member_id for m in members}
    best: dict[str, DocumentScore] = {}
    for score in sorted(scores, key=lambda s: (s.owner_id, s.target_doc_id)):
        if score.owner_id not in member_ids:
            continue
        current = best.get(score.owner_id)
        if current is None or score.r_plus > current.r_plus:
            best[score.owner_id] = score
    entries = [
        RankEntry(member_id=mid, score=s.r_plus, best_doc_id=s.target_doc_id)
        for mid, s in best.items()
    ]
    entries.sort(key=lambda e: (-e.score, e.member_id))
    return MemberRanking(bucket=bucket, entries=entries)
