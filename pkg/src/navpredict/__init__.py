"""Next-page prediction for clickstream sessions.

Exact-prefix trajectory clusters supply the primary next-page distribution;
a k-th order Markov model takes over when the cluster evidence is too thin.
"""

from .cluster import (
    APDistribution,
    Cluster,
    associated_probabilities,
    cluster_ap,
    specific_cluster,
)
from .dissimilarity import DissimilarityRow, dissimilarity, dissimilarity_row
from .evaluation import (
    EvalReport,
    EvalTask,
    bootstrap_validate,
    cross_validate,
)
from .markov import MarkovModel, kmm_predict, train_kmm
from .predictor import (
    ModelBundle,
    Prediction,
    PredictionTree,
    PredictorParams,
    expand_whatif,
    predict_next,
)
from .prefix_index import PrefixIndex, build_prefix_index
from .sessions import (
    DatasetParseError,
    LengthHistogram,
    MSNBC_CATEGORIES,
    PageCategory,
    PageRangeError,
    SessionDataset,
    Trajectory,
    filter_by_length,
    load_seq,
    parse_dataset,
    visit_length_histogram,
)
from .store import StoredModel, StoreError, load_bundle, load_store, save_store

__version__ = "0.1.0"
