"""dupwatch: forum duplicate-question recommender.

Ingests a forum corpus, fits a four-field TF-IDF ensemble per class,
serves live related-post suggestions and ranked home feeds, and ships an
evaluation kit for walk-forward recall and duplicate-rate reporting.
"""

__version__ = "0.1.0"
