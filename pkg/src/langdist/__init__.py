"""Language distance to English and its relation to TOEFL iBT scores."""

__version__ = "0.1.0"

from .asjp import AsjpResult, AsjpWordlist, global_divergence, ldn, ldn_pair, ldnd, levenshtein
from .core import (
    CEFR_BANDS,
    ENGLISH,
    CefrLevel,
    DistanceRecord,
    DistanceTable,
    LanguageId,
    Method,
    ScoreRow,
    ScoreTable,
    Skill,
    Status,
    bundled_table1,
    cefr_level,
)
from .embedding import (
    BilingualLexicon,
    EmbeddingTable,
    SldResult,
    cosine_similarity,
    semantic_similarity,
)
from .errors import DegenerateInputError, LangDistError, MissingValueError, ParseError
from .stats import (
    anova_f,
    descriptives,
    levene,
    manova,
    pearson,
    qq_data,
    split_groups,
)
from .tree import ProximityScale, TreeClassification, shared_branches, tree_distance
