from ._core import (
    COMOGRAD_LENGTH,
    FEATURE_LENGTH,
    PHOG_VALUES,
    CaTrace,
    Config,
    ConfusionCounts,
    Error,
    FeatureStore,
    FeatureVector,
    MatchLevel,
    Polarity,
    ScopLabel,
    ScoredPair,
    ScoreResult,
    auc,
    confusion_at_threshold,
    distance_matrix,
    extract_features,
    ingest_dir,
    mcc,
    parse_label_table,
    parse_scop_label,
    parse_structure,
    peak_mcc,
    pipeline_stages,
    pvalue_curve,
    read_label_table,
    read_structure,
    roc_curve,
    score,
    score_all_pairs,
    score_arrays,
    trace_from_coords,
)

__all__ = [name for name in dir() if not name.startswith("_")]
