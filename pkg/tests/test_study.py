"""Object geometry, feasibility, condition schedules, CSV round trips, retargeting."""

import io
import math

import pytest

from illusionspace import (
    AngleResponse,
    FormatError,
    InvalidPhysicalSizeError,
    ObjectKind,
    ObjectSpec,
    ProtocolEntry,
    SizeResponse,
    TrialRecord,
    generate_conditions,
    is_feasible,
    parse_trials,
    retarget_finger_distance,
    serialize_trials,
    standard_protocol,
    standard_registry,
)


def virtual(width, angle, height=6.0):
    return ObjectSpec(width, angle, height=height, kind=ObjectKind.VIRTUAL)


class TestObjectSpec:
    def test_widths_match_trigonometry(self):
        spec = ObjectSpec(3.0, 8.0)
        expected_half_span = 6.0 * math.tan(math.radians(8.0))
        assert spec.bottom_width == pytest.approx(3.0 - expected_half_span, abs=1e-12)
        assert spec.top_width == pytest.approx(3.0 + expected_half_span, abs=1e-12)
        assert spec.min_width == spec.bottom_width

    def test_negative_taper_widens_bottom(self):
        spec = virtual(4.0, -6.0)
        assert spec.bottom_width > 4.0 > spec.top_width
        assert spec.min_width == pytest.approx(spec.top_width, abs=1e-12)

    def test_rejects_non_positive_dimensions(self):
        with pytest.raises(ValueError):
            ObjectSpec(0.0, 8.0)
        with pytest.raises(ValueError):
            ObjectSpec(-2.0, 8.0)
        with pytest.raises(ValueError):
            ObjectSpec(3.0, 8.0, height=0.0)
        with pytest.raises(ValueError):
            ObjectSpec(3.0, 8.0, depth=-1.0)

    def test_negative_taper_physical_rejected_virtual_allowed(self):
        with pytest.raises(ValueError):
            ObjectSpec(3.0, -8.0)
        assert virtual(3.0, -8.0).taper_angle == -8.0


class TestFeasibility:
    def test_study_excluded_shapes(self):
        for angle in (10.0, 12.0, 14.0):
            assert not is_feasible(virtual(1.0, angle))
        # 1 - 6*tan(10 deg) is negative, per direct trigonometry
        assert 1.0 - 6.0 * math.tan(math.radians(10.0)) < 0.0

    def test_narrow_but_feasible(self):
        assert is_feasible(virtual(1.0, 8.0))
        assert 1.0 - 6.0 * math.tan(math.radians(8.0)) > 0.0

    def test_zero_taper_always_feasible(self):
        for width in (0.1, 1.0, 30.0):
            assert is_feasible(virtual(width, 0.0))

    def test_cutoff_matches_arctangent(self):
        # 1 cm wide, 6 cm tall: sides cross beyond atan(1/6)
        cutoff = math.degrees(math.atan(1.0 / 6.0))
        assert is_feasible(virtual(1.0, cutoff - 1e-6))
        assert not is_feasible(virtual(1.0, cutoff + 1e-6))

    def test_negative_angle_symmetry(self):
        assert not is_feasible(virtual(1.0, -10.0))
        assert is_feasible(virtual(1.0, -8.0))


class TestConditions:
    def test_standard_protocol_has_207_conditions(self):
        schedule = generate_conditions(standard_protocol(), seed=7)
        assert len(schedule.conditions) == 207

    def test_excluded_shapes_are_exactly_three(self):
        schedule = generate_conditions(standard_protocol(), seed=7)
        scheduled = {(c.object_id, c.virtual_size, c.virtual_angle) for c in schedule.conditions}
        missing = []
        for entry in standard_protocol():
            for s in entry.virtual_sizes:
                for a in entry.virtual_angles:
                    if (entry.object_id, s, a) not in scheduled:
                        missing.append((entry.object_id, s, a))
        assert sorted(missing) == [("3-8", 1.0, 10.0), ("3-8", 1.0, 12.0), ("3-8", 1.0, 14.0)]

    def test_split_sizes(self):
        schedule = generate_conditions(standard_protocol(), seed=3)
        first, second = schedule.split
        assert (len(first), len(second)) == (104, 103)
        assert first + second == schedule.conditions

    def test_same_seed_same_order(self):
        a = generate_conditions(standard_protocol(), seed=42)
        b = generate_conditions(standard_protocol(), seed=42)
        assert a.conditions == b.conditions

    def test_different_seed_usually_differs(self):
        a = generate_conditions(standard_protocol(), seed=1)
        b = generate_conditions(standard_protocol(), seed=2)
        assert a.conditions != b.conditions

    def test_single_condition_split(self):
        entry = ProtocolEntry("solo", ObjectSpec(6.0, 8.0), (6.0,), (8.0,))
        schedule = generate_conditions([entry], seed=0)
        assert len(schedule.conditions) == 1
        assert tuple(len(part) for part in schedule.split) == (1, 0)

    def test_count_identity_against_brute_force(self):
        # scheduled count equals the brute-force feasible cross product
        for seed in range(5):
            entries = standard_protocol()[: seed % 5 + 1]
            expected = sum(
                1
                for e in entries
                for s in e.virtual_sizes
                for a in e.virtual_angles
                if is_feasible(virtual(s, a, e.physical.height))
            )
            got = generate_conditions(entries, seed=seed)
            assert len(got.conditions) == expected

    def test_duplicate_object_id_rejected(self):
        entry = ProtocolEntry("x", ObjectSpec(6.0, 8.0), (6.0,), (8.0,))
        with pytest.raises(ValueError):
            generate_conditions([entry, entry], seed=0)


VALID_CSV = """participant_id,physical_id,physical_size_cm,physical_angle_deg,virtual_size_cm,virtual_angle_deg,response_size,response_angle
p1,6-8,6,8,6.0,8.0,smaller,less_tilted
p1,6-8,6,8,7.0,8.0,larger,less_tilted
p2,6-8,6,8,5.0,8.0,smaller,more_tilted
"""


class TestParseTrials:
    def test_well_formed_file(self):
        records, issues = parse_trials(VALID_CSV)
        assert len(records) == 3
        assert issues == []
        assert records[0].response_size is SizeResponse.VIRTUAL_SMALLER
        assert records[2].response_angle is AngleResponse.VIRTUAL_MORE_TILTED

    def test_infeasible_virtual_row_dropped_with_issue(self):
        text = VALID_CSV + "p1,6-8,6,8,1.0,12.0,smaller,less_tilted\n"
        records, issues = parse_trials(text)
        assert len(records) == 3
        assert len(issues) == 1
        assert issues[0].code == "infeasible_virtual"
        assert issues[0].line == 5
        assert "infeasible virtual shape" in issues[0].message

    def test_duplicated_header_raises(self):
        lines = VALID_CSV.splitlines()
        text = "\n".join([lines[0], lines[1], lines[0], lines[2]]) + "\n"
        with pytest.raises(FormatError):
            parse_trials(text)

    def test_missing_column_raises(self):
        broken = VALID_CSV.replace("response_angle", "response_tilt")
        with pytest.raises(FormatError):
            parse_trials(broken)

    def test_repeated_column_raises(self):
        broken = VALID_CSV.replace("response_angle", "response_size")
        with pytest.raises(FormatError):
            parse_trials(broken)

    def test_empty_file_raises(self):
        with pytest.raises(FormatError):
            parse_trials("")

    def test_unknown_object_with_registry(self):
        records, issues = parse_trials(VALID_CSV.replace("6-8", "mystery"), standard_registry())
        assert records == []
        assert all(i.code == "unknown_object" for i in issues)

    def test_physical_mismatch(self):
        text = VALID_CSV + "p1,6-8,9,8,6.0,8.0,smaller,less_tilted\n"
        _, issues = parse_trials(text)
        assert [i.code for i in issues] == ["physical_mismatch"]

    def test_bad_number(self):
        text = VALID_CSV + "p1,6-8,6,8,six,8.0,smaller,less_tilted\n"
        _, issues = parse_trials(text)
        assert [i.code for i in issues] == ["bad_number"]

    def test_missing_response(self):
        text = VALID_CSV + "p1,6-8,6,8,6.0,8.0,,less_tilted\n"
        _, issues = parse_trials(text)
        assert [i.code for i in issues] == ["missing_response"]

    def test_bad_response_word(self):
        text = VALID_CSV + "p1,6-8,6,8,6.0,8.0,tiny,less_tilted\n"
        _, issues = parse_trials(text)
        assert [i.code for i in issues] == ["bad_response"]

    def test_oversized_virtual_kept_with_warning(self):
        text = VALID_CSV + "p1,6-8,6,8,11.5,8.0,larger,more_tilted\n"
        records, issues = parse_trials(text)
        assert len(records) == 4
        assert [i.code for i in issues] == ["size_above_grasp_range"]
        assert issues[0].severity == "warning"

    def test_field_count_issue(self):
        text = VALID_CSV + "p1,6-8,6,8,6.0\n"
        _, issues = parse_trials(text)
        assert [i.code for i in issues] == ["field_count"]

    def test_blank_lines_skipped(self):
        records, issues = parse_trials(VALID_CSV + "\n\n")
        assert len(records) == 3 and not issues

    def test_accepts_stream(self):
        records, _ = parse_trials(io.StringIO(VALID_CSV))
        assert len(records) == 3


class TestSerializeRoundTrip:
    def test_round_trip_is_field_identical(self):
        records, _ = parse_trials(VALID_CSV)
        text = serialize_trials(records)
        reparsed, issues = parse_trials(text)
        assert not issues
        assert reparsed == records

    def test_round_trip_preserves_timestamp(self):
        text = VALID_CSV.replace("response_angle\n", "response_angle,timestamp\n")
        text = text.replace("less_tilted\n", "less_tilted,2026-01-05T10:00:00\n", 1)
        records, _ = parse_trials(text)
        assert records[0].timestamp == "2026-01-05T10:00:00"
        reparsed, _ = parse_trials(serialize_trials(records))
        assert reparsed == records


class TestTrialRecord:
    def test_infeasible_virtual_rejected(self):
        with pytest.raises(ValueError):
            TrialRecord(
                "p1",
                "3-8",
                ObjectSpec(3.0, 8.0),
                1.0,
                12.0,
                SizeResponse.VIRTUAL_SMALLER,
                AngleResponse.VIRTUAL_LESS_TILTED,
            )

    def test_virtual_spec_inherits_dimensions(self):
        record = TrialRecord(
            "p1",
            "6-8",
            ObjectSpec(6.0, 8.0, height=5.0, depth=4.0),
            6.5,
            8.0,
            SizeResponse.VIRTUAL_SMALLER,
            AngleResponse.VIRTUAL_LESS_TILTED,
        )
        assert record.virtual.height == 5.0
        assert record.virtual.depth == 4.0
        assert record.virtual.kind is ObjectKind.VIRTUAL


class TestRetargeting:
    def test_congruent_identity(self):
        assert retarget_finger_distance(8.0, 6.0, 6.0) == 8.0

    def test_direct_proportion(self):
        assert retarget_finger_distance(8.0, 9.0, 6.0) == pytest.approx(12.0, abs=1e-12)

    def test_closed_fingers(self):
        assert retarget_finger_distance(0.0, 4.0, 9.0) == 0.0

    def test_non_positive_physical_size(self):
        with pytest.raises(InvalidPhysicalSizeError):
            retarget_finger_distance(8.0, 6.0, 0.0)
        with pytest.raises(InvalidPhysicalSizeError):
            retarget_finger_distance(8.0, 6.0, -3.0)

    def test_linearity(self):
        base = retarget_finger_distance(2.0, 7.0, 6.0)
        assert retarget_finger_distance(4.0, 7.0, 6.0) == pytest.approx(2 * base, rel=1e-12)
        assert retarget_finger_distance(2.0, 14.0, 6.0) == pytest.approx(2 * base, rel=1e-12)
