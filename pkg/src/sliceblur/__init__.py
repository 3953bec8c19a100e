"""Fast Gaussian image filtering with weighted-slice running sums.

The Gaussian half-kernel is approximated by k constants on a partition of
its support; the equivalent overlapping "slice" form lets the filter answer
every pixel with 2k additions and k multiplications over a single cumulative
sum, independent of sigma.  The partition is optimized under a quadratic
error form that weights kernel deviations by the autocorrelation of natural
images, so the l2 error of the filtered output (not of the kernel) is
minimized.
"""

from .approx import (
    AutocorrModel,
    DegeneratePartitionError,
    DegenerateScaleError,
    Partition,
    SampledKernel,
    SliceKernel,
    build_autocorr,
    optimal_constants,
    quadratic_error,
    sample_gaussian,
    scale_to_sigma,
    search_partitions,
    table_defaults,
    to_slices,
)
from .filtering import (
    KernelTooLargeError,
    filter_at,
    prefix_sum,
    separable_filter_2d,
    slice_filter_1d,
)
from .oracle import (
    OpCounter,
    count_ops,
    direct_convolve_1d,
    exact_gaussian_2d,
    mse,
    psnr,
)

__all__ = [
    "AutocorrModel",
    "DegeneratePartitionError",
    "DegenerateScaleError",
    "KernelTooLargeError",
    "OpCounter",
    "Partition",
    "SampledKernel",
    "SliceKernel",
    "build_autocorr",
    "count_ops",
    "direct_convolve_1d",
    "exact_gaussian_2d",
    "filter_at",
    "mse",
    "optimal_constants",
    "prefix_sum",
    "psnr",
    "quadratic_error",
    "sample_gaussian",
    "scale_to_sigma",
    "search_partitions",
    "separable_filter_2d",
    "slice_filter_1d",
    "table_defaults",
    "to_slices",
]
