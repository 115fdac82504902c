import pytest

from rabibo.exceptions import UsageError
from rabibo.grid_syntax import parse_grid, parse_int_list


class TestParseGrid:
    def test_single_value(self):
        assert parse_grid("1.5") == [1.5]
        assert parse_grid(" 10 ") == [10.0]
        assert parse_grid("1e-3") == [0.001]

    def test_list(self):
        assert parse_grid("5,10,20,30") == [5.0, 10.0, 20.0, 30.0]
        assert parse_grid("0.5, 1, 1.5") == [0.5, 1.0, 1.5]

    def test_range_is_inclusive(self):
        assert parse_grid("0:1.5:4") == [0.0, 0.5, 1.0, 1.5]
        values = parse_grid("0:3:31")
        assert len(values) == 31
        assert values[0] == 0.0 and values[-1] == 3.0

    def test_range_of_one(self):
        assert parse_grid("2:7:1") == [2.0]

    def test_python_values_pass_through(self):
        assert parse_grid(10) == [10.0]
        assert parse_grid([1, 2.5]) == [1.0, 2.5]

    @pytest.mark.parametrize("text", ["abc", "1,,2", "1:2", "0:1:2.5", "1 2", ""])
    def test_malformed(self, text):
        with pytest.raises(UsageError, match="Cannot parse grid"):
            parse_grid(text)

    def test_zero_count(self):
        with pytest.raises(UsageError, match="at least 1"):
            parse_grid("0:1:0")


class TestParseIntList:
    def test_values(self):
        assert parse_int_list("50,100,150") == [50, 100, 150]
        assert parse_int_list("200") == [200]
        assert parse_int_list(7) == [7]
        assert parse_int_list([50, "100"]) == [50, 100]

    def test_rejects_fractions(self):
        with pytest.raises(UsageError):
            parse_int_list("5.5")
