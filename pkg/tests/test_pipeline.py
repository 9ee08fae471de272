"""The zcl-profile-to-series pipeline on catalog algebras."""

import pytest

from zclkit import builtin_algebra, series_pipeline
from zclkit.errors import ValidationError
from zclkit.series import RATIONAL_FORM_DETECTED


def test_pipeline_rejects_tiny_windows(stanley):
    with pytest.raises(ValidationError):
        series_pipeline(stanley, 2)


def test_point_profile_is_all_zero():
    out = series_pipeline(builtin_algebra("point"), 4)
    assert out.sequence.values == (0, 0, 0, 0)
    assert out.analysis.verdict == RATIONAL_FORM_DETECTED
    assert out.analysis.p_coeffs == ()
    assert out.certified


def test_even_sphere_short_window():
    # three exact entries; a shorter evidence run is needed for a verdict
    out = series_pipeline(builtin_algebra("sphere-even:2"), 3, min_run=2)
    assert [e.value for e in out.entries] == [2, 3, 4]
    assert all(e.method == "exact" for e in out.entries)
    assert out.p_at_one == 1 == out.cl_value
    assert out.certified


def test_uncertified_entries_skip_analysis(stanley):
    out = series_pipeline(stanley, 3, max_dim=8)
    assert all(e.value is None for e in out.entries)
    assert out.sequence is None
    assert out.analysis is None
    assert not out.certified


def test_entries_fall_back_to_bounds_beyond_the_ceiling(stanley):
    out = series_pipeline(stanley, 4, max_dim=256)
    methods = [e.method for e in out.entries]
    assert methods == ["exact", "exact", "exact", "bounds"]
    assert [e.value for e in out.entries] == [2, 3, 4, 5]
    assert out.certified
    assert out.p_at_one == 1
