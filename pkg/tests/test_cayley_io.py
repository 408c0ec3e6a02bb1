import os

import pytest

from core import library
from core.cayley_io import load_semigroup, parse_cayley, render_cayley, save_semigroup
from core.errors import AssociativityError, CayleyFormatError
from core.resource_manager import ResourceManager
from core.semigroup import Semigroup, direct_product

from conftest import NAMED_KEYS


def test_parse_minimal():
    S = parse_cayley("2\n0 0\n1 1\n")
    assert S == library.left_zero(2)
    assert S.labels == ("0", "1")
    assert parse_cayley("1\n0\n").order == 1


def test_parse_group_with_identity_not_first():
    S = parse_cayley("2\n1 0\n0 1\n")
    assert S.idempotents() == {1}


def test_comments_and_labels():
    text = "# a comment\n2   # order\n\n1 1\n1 1  # zero row\nlabels: a 0\n"
    S = parse_cayley(text)
    assert S == library.null_semigroup(2)
    assert S.labels == ("a", "0")


@pytest.mark.parametrize("text, line, fragment", [
    ("", None, "empty input"),
    ("2 2\n0 0\n0 0\n", 1, "only the order"),
    ("2\n0 x\n0 0\n", 2, "non-numeric token 'x'"),
    ("2\n0 0 0\n0 0\n", 2, "row has 3 entries"),
    ("2\n0 0\n0 2\n", 3, "out of range"),
    ("2\n0 0\n", None, "expected 2 rows"),
    ("2\n0 0\n0 0\n0 0\n", 4, "more than 2 rows"),
    ("2\n0 0\n1 1\nlabels: a\n", 4, "expected 2 labels"),
    ("2\n0 0\n1 1\nlabels: a a\n", 4, "distinct"),
    ("0\n", 1, "order must be positive"),
])
def test_malformed_input(text, line, fragment):
    with pytest.raises(CayleyFormatError) as info:
        parse_cayley(text)
    assert info.value.line == line
    assert fragment in str(info.value)


def test_non_associative_table_reports_triple():
    with pytest.raises(AssociativityError) as info:
        parse_cayley("2\n1 0\n0 0\n")
    assert len(info.value.triple) == 3


@pytest.mark.parametrize("name", NAMED_KEYS)
def test_render_reads_back(name):
    S = library.NAMED[name]()
    T = parse_cayley(render_cayley(S, comment="round trip"))
    assert T == S and T.labels == S.labels


def test_render_reads_back_unusual_labels():
    S = Semigroup([[0, 0], [1, 1]], labels=["x[1]", "{b},c~"])
    text = render_cayley(S)
    assert text.endswith("labels: x[1] {b},c~\n")
    T = parse_cayley(text)
    assert T == S and T.labels == S.labels


def test_labels_that_cannot_be_written_are_refused():
    with pytest.raises(CayleyFormatError):
        Semigroup([[0, 0], [1, 1]], labels=["left a", "b#2"])
    for S in (library.full_transformation_monoid().adjoin_identity(),
              direct_product(library.left_zero(2), library.cyclic_group(2))):
        assert parse_cayley(render_cayley(S)).labels == S.labels


def test_render_pads_and_omits_default_labels():
    text = render_cayley(library.semilattice_chain(2))
    assert text == "2\n0 0\n0 1\n"


def test_save_and_load(tmp_path, t2):
    path = save_semigroup(t2, tmp_path / "t2.sgp", comment="T2")
    assert path.read_text(encoding="utf-8").startswith("# T2\n4\n")
    assert load_semigroup(path) == t2


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_semigroup(tmp_path / "missing.sgp")


def test_bundled_samples_match_library(isolated_home):
    samples = ResourceManager().list_samples()
    assert {p.stem for p in samples} == set(library.NAMED)
    for path in samples:
        S = load_semigroup(path)
        expected = library.NAMED[path.stem]()
        assert S == expected, path.name
        assert S.labels == expected.labels, path.name


def test_generator_reproduces_bundled_samples(tmp_path, isolated_home):
    from generate_samples import generate_samples

    written = generate_samples(str(tmp_path))
    bundled = ResourceManager().get_samples_dir()
    assert len(written) == len(library.NAMED)
    for path in written:
        name = os.path.basename(path)
        assert (bundled / name).read_text(encoding="utf-8") == (tmp_path / name).read_text(encoding="utf-8")
