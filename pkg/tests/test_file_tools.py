"""
Tests for FileTools and ResultTable

Verifies CSV rendering, file creation and MAC data ingestion.
"""

import math

import pytest
from pathlib import Path
import tempfile
import shutil

import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from services.file_tools import FileTools
from services.result_table import INFEASIBLE, ResultTable


@pytest.fixture
def temp_dir():
    """Create a temporary directory for testing."""
    temp = Path(tempfile.mkdtemp())
    yield temp
    shutil.rmtree(temp, ignore_errors=True)


@pytest.fixture
def table():
    table = ResultTable.build("pathway_goal300_r0.024", "pathway", [("t", "yr"), ("K", "1")])
    table.add_row((0.0, 0.0))
    table.add_row((0.05, 0.001))
    table.add_footer("config_hash", "0123456789abcdef")
    return table


class TestResultTable:
    """Test cases for ResultTable."""
    
    def test_headers_carry_units(self, table):
        """Test that headers carry units."""
        assert [c.header for c in table.columns] == ["t [yr]", "K [1]"]
    
    def test_wrong_width_rejected(self, table):
        """Test that rows of the wrong width are rejected."""
        with pytest.raises(ValueError):
            table.add_row((1.0,))
    
    @pytest.mark.parametrize("value", [math.nan, math.inf])
    def test_non_finite_rejected(self, table, value):
        """Test that non-finite cells are rejected."""
        with pytest.raises(ValueError):
            table.add_row((1.0, value))
    
    def test_flagged_row(self, table):
        """Test adding a flagged row."""
        assert table.flagged is False
        table.add_flagged_row()
        assert table.flagged is True
        assert table.rows[-1] == (INFEASIBLE, INFEASIBLE)
    
    def test_column_lookup(self, table):
        """Test looking up a column by name."""
        assert table.column("K") == [0.0, 0.001]
    
    def test_add_columns(self):
        """Test adding whole columns."""
        table = ResultTable.build("x", "burden", [("t", "yr"), ("burden", "1")])
        table.add_columns([0.0, 1.0, 2.0], [0.1, 0.2, 0.3])
        assert table.rows == [(0.0, 0.1), (1.0, 0.2), (2.0, 0.3)]


class TestFormatCsv:
    """Test cases for FileTools.format_csv."""
    
    def test_exact_text(self, table):
        """Test the exact CSV text."""
        expected = (
            "t [yr],K [1]\r\n"
            "0.0,0.0\r\n"
            "0.05,0.001\r\n"
            "# config_hash: 0123456789abcdef\r\n"
        )
        assert FileTools.format_csv(table) == expected
    
    def test_floats_round_trip(self):
        """Test that floats are written with round-trip precision."""
        table = ResultTable.build("x", "pathway", [("m", "GtCO2/yr")])
        value = 35.788000000000004
        table.add_row((value,))
        body = FileTools.format_csv(table).split("\r\n")[1]
        assert float(body) == value
    
    def test_integers_and_flags(self):
        """Test writing integers and flags."""
        table = ResultTable.build("x", "cost_curve", [("n", "1"), ("f", "1")])
        table.add_row((3, 0.5))
        table.add_flagged_row()
        lines = FileTools.format_csv(table).split("\r\n")
        assert lines[1] == "3,0.5"
        assert lines[2] == "infeasible,infeasible"
    
    def test_empty_table_has_header_only(self):
        """Test that an empty table writes only its header."""
        table = ResultTable.build("x", "delay", [("t", "yr")])
        assert FileTools.format_csv(table) == "t [yr]\r\n"


class TestCreateFile:
    """Test cases for FileTools.create_file."""
    
    def test_create_file_with_nested_dirs(self, temp_dir):
        """Test creating a file in nested directories."""
        file_path = temp_dir / "run" / "tables" / "a.csv"
        
        result = FileTools.create_file(file_path, "t [yr]\r\n")
        
        assert result["success"] is True
        assert file_path.read_bytes() == b"t [yr]\r\n"
    
    def test_create_file_no_overwrite(self, temp_dir):
        """Test that create_file fails when file exists and overwrite=False."""
        file_path = temp_dir / "existing.csv"
        file_path.write_text("original content")
        
        result = FileTools.create_file(file_path, "new content", overwrite=False)
        
        assert result["success"] is False
        assert "already exists" in result["message"]
        assert file_path.read_text() == "original content"
    
    def test_emit_csv_overwrites(self, temp_dir, table):
        """Test that emitting a table replaces an older file."""
        file_path = temp_dir / "pathway.csv"
        file_path.write_text("stale")
        
        result = FileTools.emit_csv(table, file_path)
        
        assert result["success"] is True
        assert result["rows"] == 2
        assert file_path.read_bytes().decode("utf-8") == FileTools.format_csv(table)


class TestReadMacPoints:
    """Test cases for FileTools.read_mac_points."""
    
    def test_mixed_delimiters_and_comments(self, temp_dir):
        """Test reading mixed delimiters and comments."""
        path = temp_dir / "mac.txt"
        path.write_text(
            "# reduction, cost\n"
            "5.0, 12.5\n"
            "\n"
            "10.0;30.0  # mid\n"
            "15.0\t80.0\n"
        )
        
        result = FileTools.read_mac_points(path)
        
        assert result["success"] is True
        assert [(p.reduction, p.marginal_cost) for p in result["points"]] == [
            (5.0, 12.5), (10.0, 30.0), (15.0, 80.0),
        ]
    
    def test_missing_file(self, temp_dir):
        """Test reading a missing file."""
        result = FileTools.read_mac_points(temp_dir / "absent.txt")
        assert result["success"] is False
        assert "not found" in result["message"]
    
    @pytest.mark.parametrize("line", ["5.0 12.5 7.0", "5.0 abc", "5.0 -1.0"])
    def test_bad_line_reports_location(self, temp_dir, line):
        """Test that a bad line reports its location."""
        path = temp_dir / "mac.txt"
        path.write_text("1.0 2.0\n" + line + "\n")
        
        result = FileTools.read_mac_points(path)
        
        assert result["success"] is False
        assert result["points"] == []
        assert ":2:" in result["message"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
