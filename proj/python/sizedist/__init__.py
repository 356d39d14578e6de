"""Program size statistics: LOC scanning, lognormal and Weibull fitting,
size estimation, and defect concentration analysis."""

from ._core import (
    AlbergCurve,
    BadRangeError,
    BadRowError,
    ConcentrationRow,
    ConcentrationTable,
    CurvePoint,
    Dataset,
    DecodeError,
    DegenerateSampleError,
    DescriptiveStats,
    DomainError,
    DuplicateIdError,
    EmptySampleError,
    Error,
    EstimationResult,
    FitQuality,
    FormatMismatchError,
    IoError,
    LognormalParams,
    MissingDefectDataError,
    MissingHeaderError,
    ProgramRecord,
    ScanIssue,
    ScanResult,
    TooFewPointsError,
    UnknownLanguageError,
    WeibullFit,
    WeibullParams,
    ZeroDefectsError,
    __version__,
    alberg_curve,
    concentration_table,
    corpus_default_params,
    corpus_rule_constant,
    count_loc,
    describe,
    empirical_cdf,
    estimate_count_in_range,
    estimate_total_size,
    expected_program_size,
    fit_defect_weibull,
    fit_lognormal_mle,
    fit_quality,
    fit_quality_cdf,
    fit_weibull,
    glob_match,
    import_eclipse_dataset,
    load_canonical_csv,
    lognormal_cdf,
    lognormal_pdf,
    mre,
    normal_cdf,
    parse_canonical_csv,
    rank_size_curve,
    report_json,
    save_canonical_csv,
    scan_tree,
    to_canonical_csv,
    weibull_cdf,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
