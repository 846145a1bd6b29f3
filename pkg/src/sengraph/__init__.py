"""Sentence embeddings from content and inter-sentence similarity graphs.

Pipeline: ingest a corpus, train content-based sentence vectors (DBOW,
DM or their concatenation), build a discourse graph from them, then
either retrofit the vectors on the graph, embed the graph directly with
biased random walks, or train jointly with a graph-smoothing term.
Learned vectors are evaluated on sentence classification, clustering
and extractive-summary ranking.
"""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
