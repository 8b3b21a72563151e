"""towndex: an interactive directory engine for a historical community.

Builds an entity knowledge base from census, city-directory, and OCR
newspaper sources, links noisy name mentions to entities, and serves
interactive queries over a sealed snapshot.
"""

__version__ = "0.1.0"
