import pytest
from hypothesis import given, settings

from eccsolve import ValidationError, gen_ig_robust
from eccsolve.formats import (
    FormatError,
    emit_instance,
    import_simple,
    parse_instance,
)
from eccsolve.rational import Q

from util import instances


class TestParse:
    def test_header_only(self):
        h = parse_instance("ecc 1\nnodes 4\ncolors 2\n")
        assert h.node_count == 4 and h.num_edges == 0

    def test_comments_and_blank_lines(self):
        text = "# a file\necc 1\n\nnodes 2  # two\ncolors 1\ne 0 1 0 1\n"
        h = parse_instance(text)
        assert h.num_edges == 1 and h.edge_members[0] == (0, 1)

    def test_rational_weight_is_exact(self):
        h = parse_instance("ecc 1\nnodes 1\ncolors 1\ne 0 1/3 0\n")
        assert h.edge_weights[0] == Q(1, 3)

    def test_missing_header(self):
        with pytest.raises(FormatError, match="ecc 1"):
            parse_instance("nodes 2\ncolors 1\n")

    def test_error_carries_line_and_column(self):
        with pytest.raises(FormatError, match="line 4, column 5"):
            parse_instance("ecc 1\nnodes 2\ncolors 1\ne 0 bad 0\n")

    def test_unknown_line(self):
        with pytest.raises(FormatError, match="line 4"):
            parse_instance("ecc 1\nnodes 2\ncolors 1\nx 0 1 0\n")

    def test_edge_needs_nodes(self):
        with pytest.raises(FormatError, match="at least one node"):
            parse_instance("ecc 1\nnodes 2\ncolors 1\ne 0 1\n")

    def test_semantic_errors_delegate(self):
        with pytest.raises(ValidationError, match="out of range"):
            parse_instance("ecc 1\nnodes 1\ncolors 1\ne 0 1 0 5\n")

    def test_empty_file(self):
        with pytest.raises(FormatError, match="empty file"):
            parse_instance("")


class TestRoundTrip:
    def test_robust_gap_round_trips(self):
        h, _ = gen_ig_robust(2)
        assert parse_instance(emit_instance(h)) == h

    @settings(max_examples=100, deadline=None)
    @given(h=instances(max_nodes=6, max_edges=8, max_colors=4, rational_weights=True))
    def test_any_instance_round_trips(self, h):
        assert parse_instance(emit_instance(h)) == h


class TestImportSimple:
    def test_basic(self):
        text = "red\ta,b\nblue\tb,c\nred\ta,b\n"
        h, nodes, colors = import_simple(text)
        assert nodes == ["a", "b", "c"] and colors == ["red", "blue"]
        assert h.num_edges == 3  # parallel edges preserved
        assert h.edge_members[0] == h.edge_members[2] == (0, 1)
        assert h.edge_weights[0] == 1

    def test_comments_skipped(self):
        h, _, _ = import_simple("# note\nred\tx\n")
        assert h.num_edges == 1

    def test_missing_tab(self):
        with pytest.raises(FormatError, match="line 1"):
            import_simple("red a,b\n")

    def test_no_nodes(self):
        with pytest.raises(FormatError, match="no node labels"):
            import_simple("red\t ,\n")

    def test_duplicate_members_collapse(self):
        h, nodes, _ = import_simple("red\ta,a,b\n")
        assert h.edge_members[0] == (0, 1)
