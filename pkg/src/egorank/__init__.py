"""egorank: content-similarity influence ranking over an ego network.

Given an ego user's activity corpora and those of their interacted
network members, the pipeline classifies every document into one of ten
(category, sentiment) influence buckets, ranks members inside a bucket by
a frequency-and-similarity recommendation index, and selects the
top-most influenceable targets after removing default influencers.
"""

__version__ = "0.1.0"

from .classify import Bucket, Category, SentimentClass  # noqa: F401
from .corpus import (  # noqa: F401
    ActivityType,
    Corpus,
    Document,
    InteractedMember,
    MemberKind,
    Platform,
    generate_synthetic_corpus,
)
from .errors import EgorankError  # noqa: F401
