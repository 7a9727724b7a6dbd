"""Citation normalization: ratio-of-means (CPP/JCSm, CPP/FCSm) versus
mean-of-ratios indicators, with nonparametric significance tests and
ranking comparison."""

__version__ = "0.1.0"

from .errors import CitenormError
from .model import (
    CitableFilter,
    DocType,
    EvaluationSet,
    PublicationRecord,
    SelfCitationMode,
    apply_filter,
    effective_citations,
    make_record,
)
from .ingest import load_appendix_fixture, parse_csv, read_csv, serialize_csv
from .indicators import (
    IndicatorReport,
    NormalizationBasis,
    PerformanceFlag,
    build_report,
    cpp,
    fcsm,
    jcsm,
    mean_of_ratios,
    per_paper_ratios,
    performance_flag,
    ratio_of_means,
)
from .stats import (
    RegressionFit,
    StatTestResult,
    kruskal_wallis,
    mann_whitney,
    ols_fit,
    pairwise_posthoc,
    pearson,
    percentile_rank,
    spearman,
    test_against_unity,
)
from .ranking import (
    RankingComparison,
    RankingEntry,
    compare_rankings,
    compare_values,
    rank_units,
    relative_difference,
)
