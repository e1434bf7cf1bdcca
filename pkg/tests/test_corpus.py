import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpdp_ifs.corpus import (
    DataFormatError,
    FeatureSchema,
    NoCommonMetricsError,
    Project,
    binarize_label,
    intersect_features,
    load_arff,
    load_csv,
    summarize,
)

from synth import corpus_projects, write_project_arff, write_project_csv


def make_project(names, matrix, labels, name="p", family="fam"):
    schema = FeatureSchema(feature_names=tuple(names), label_column="bug")
    return Project(name=name, dataset_family=family, schema=schema,
                   matrix=np.asarray(matrix, dtype=float), labels=np.asarray(labels))


class TestBinarizeLabel:
    def test_defect_counts(self):
        assert [binarize_label(t) for t in ("0", "2", "0")] == [0, 1, 0]

    def test_numeric_variants(self):
        assert binarize_label("1") == 1
        assert binarize_label("0.0") == 0
        assert binarize_label("3.5") == 1
        assert binarize_label("-1") == 0

    @pytest.mark.parametrize("token", ["true", "YES", "y", "buggy", "Defective", "bug"])
    def test_truthy_tokens(self, token):
        assert binarize_label(token) == 1

    @pytest.mark.parametrize("token", ["false", "No", "n", "clean", "non-defective"])
    def test_falsy_tokens(self, token):
        assert binarize_label(token) == 0

    def test_unknown_token(self):
        with pytest.raises(DataFormatError, match="unknown value token"):
            binarize_label("maybe")

    def test_non_finite(self):
        with pytest.raises(DataFormatError):
            binarize_label("nan")


class TestFeatureSchema:
    def test_canonicalization_strips_and_lowers(self):
        schema = FeatureSchema(feature_names=("WMC", " dit "), label_column="bug")
        assert schema.canonical_names() == ("wmc", "dit")

    def test_alias_map_applies(self):
        schema = FeatureSchema(
            feature_names=("NumMethods",),
            label_column="bug",
            alias_map={"nummethods": "wmc"},
        )
        assert schema.canonical_names() == ("wmc",)

    def test_duplicate_after_canonicalization_rejected(self):
        with pytest.raises(DataFormatError, match="duplicate"):
            FeatureSchema(feature_names=("loc", "LOC"), label_column="bug")

    def test_label_among_features_rejected(self):
        with pytest.raises(DataFormatError, match="label column"):
            FeatureSchema(feature_names=("bug", "loc"), label_column="bug")


class TestProject:
    def test_matrix_is_read_only(self):
        project = make_project(["a"], [[1.0], [2.0]], [0, 1])
        with pytest.raises(ValueError):
            project.matrix[0, 0] = 9.0

    def test_non_binary_labels_rejected(self):
        with pytest.raises(DataFormatError, match="binary"):
            make_project(["a"], [[1.0], [2.0]], [0, 2])

    def test_label_count_mismatch_rejected(self):
        with pytest.raises(DataFormatError):
            make_project(["a"], [[1.0], [2.0]], [0, 1, 1])

    def test_schema_width_mismatch_rejected(self):
        with pytest.raises(DataFormatError):
            make_project(["a", "b"], [[1.0], [2.0]], [0, 1])

    def test_non_finite_rejected(self):
        with pytest.raises(DataFormatError, match="non-finite"):
            make_project(["a"], [[np.nan], [2.0]], [0, 1])

    def test_empty_rejected(self):
        with pytest.raises(DataFormatError):
            make_project(["a"], np.empty((0, 1)), [])


class TestLoadCsv:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "demo.csv"
        path.write_text("wmc,loc,bug\n1,10,0\n2,20,1\n3,30,0\n", encoding="utf-8")
        project = load_csv(path, FeatureSchema(label_column="bug"), family="promise")
        assert project.name == "demo"
        assert project.dataset_family == "promise"
        assert project.schema.feature_names == ("wmc", "loc")
        assert np.array_equal(project.matrix, [[1, 10], [2, 20], [3, 30]])
        assert list(project.labels) == [0, 1, 0]

    def test_feature_subset_and_alias(self, tmp_path):
        path = tmp_path / "demo.csv"
        path.write_text("NumMethods,loc,bug\n1,10,0\n2,20,1\n", encoding="utf-8")
        schema = FeatureSchema(
            feature_names=("wmc",), label_column="bug", alias_map={"nummethods": "wmc"}
        )
        project = load_csv(path, schema)
        assert project.schema.canonical_names() == ("wmc",)
        assert np.array_equal(project.matrix, [[1], [2]])

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(DataFormatError, match="empty file"):
            load_csv(path, FeatureSchema(label_column="bug"))

    def test_header_only(self, tmp_path):
        path = tmp_path / "header.csv"
        path.write_text("a,bug\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="empty file"):
            load_csv(path, FeatureSchema(label_column="bug"))

    def test_missing_label_column(self, tmp_path):
        path = tmp_path / "nolabel.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="label column"):
            load_csv(path, FeatureSchema(label_column="bug"))

    def test_non_numeric_cell(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,bug\nx,0\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="non-numeric"):
            load_csv(path, FeatureSchema(label_column="bug"))

    def test_ragged_row(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("a,b,bug\n1,2,0\n1,0\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="cells"):
            load_csv(path, FeatureSchema(label_column="bug"))

    def test_duplicate_feature_names(self, tmp_path):
        path = tmp_path / "dupe.csv"
        path.write_text("a,A,bug\n1,2,0\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="duplicate"):
            load_csv(path, FeatureSchema(label_column="bug"))

    def test_non_finite_cell(self, tmp_path):
        path = tmp_path / "inf.csv"
        path.write_text("a,bug\ninf,0\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="non-finite"):
            load_csv(path, FeatureSchema(label_column="bug"))


class TestLoadArff:
    def test_minimal_nominal_class(self, tmp_path):
        path = tmp_path / "mini.arff"
        path.write_text(
            "% comment\n"
            "@relation mini\n"
            "@attribute size numeric\n"
            "@attribute bug {clean,buggy}\n"
            "@data\n"
            "1.5,clean\n"
            "2.5,buggy\n",
            encoding="utf-8",
        )
        project = load_arff(path, FeatureSchema(label_column="bug"))
        assert project.n_instances == 2
        assert project.n_features == 1
        assert list(project.labels) == [0, 1]

    def test_quoted_attribute_names(self, tmp_path):
        path = tmp_path / "quoted.arff"
        path.write_text(
            "@relation q\n"
            "@attribute 'lines of code' real\n"
            "@attribute bug {false,true}\n"
            "@data\n"
            "3,true\n"
            "4,false\n",
            encoding="utf-8",
        )
        project = load_arff(path, FeatureSchema(label_column="bug"))
        assert project.schema.feature_names == ("lines of code",)
        assert list(project.labels) == [1, 0]

    def test_row_arity_mismatch(self, tmp_path):
        path = tmp_path / "arity.arff"
        path.write_text(
            "@relation a\n@attribute x numeric\n@attribute bug {0,1}\n@data\n1\n",
            encoding="utf-8",
        )
        with pytest.raises(DataFormatError, match="row arity mismatch"):
            load_arff(path, FeatureSchema(label_column="bug"))

    def test_missing_value_rejected(self, tmp_path):
        path = tmp_path / "missing.arff"
        path.write_text(
            "@relation a\n@attribute x numeric\n@attribute bug {0,1}\n@data\n?,1\n",
            encoding="utf-8",
        )
        with pytest.raises(DataFormatError, match="missing value"):
            load_arff(path, FeatureSchema(label_column="bug"))

    def test_sparse_rows_rejected(self, tmp_path):
        path = tmp_path / "sparse.arff"
        path.write_text(
            "@relation a\n@attribute x numeric\n@attribute bug {0,1}\n@data\n{0 1, 1 1}\n",
            encoding="utf-8",
        )
        with pytest.raises(DataFormatError, match="sparse"):
            load_arff(path, FeatureSchema(label_column="bug"))

    def test_nominal_feature_rejected(self, tmp_path):
        path = tmp_path / "nomfeat.arff"
        path.write_text(
            "@relation a\n@attribute x {a,b}\n@attribute y numeric\n"
            "@attribute bug {0,1}\n@data\na,1,0\n",
            encoding="utf-8",
        )
        with pytest.raises(DataFormatError, match="nominal"):
            load_arff(path, FeatureSchema(label_column="bug"))

    def test_unknown_nominal_label_token(self, tmp_path):
        path = tmp_path / "tok.arff"
        path.write_text(
            "@relation a\n@attribute x numeric\n@attribute bug {clean,buggy}\n@data\n1,broken\n",
            encoding="utf-8",
        )
        with pytest.raises(DataFormatError, match="unknown value token"):
            load_arff(path, FeatureSchema(label_column="bug"))

    def test_missing_data_section(self, tmp_path):
        path = tmp_path / "nodata.arff"
        path.write_text("@relation a\n@attribute x numeric\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="@data"):
            load_arff(path, FeatureSchema(label_column="bug"))

    def test_missing_relation(self, tmp_path):
        path = tmp_path / "norel.arff"
        path.write_text("@attribute x numeric\n@attribute bug {0,1}\n@data\n1,0\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="@relation"):
            load_arff(path, FeatureSchema(label_column="bug"))

    def test_roundtrip_matches_csv(self, tmp_path):
        project = corpus_projects(seed=3)[0]
        write_project_csv(tmp_path / "p.csv", project)
        write_project_arff(tmp_path / "p.arff", project)
        from_csv = load_csv(tmp_path / "p.csv", FeatureSchema(label_column="bug"))
        from_arff = load_arff(tmp_path / "p.arff", FeatureSchema(label_column="bug"))
        assert np.array_equal(from_csv.matrix, from_arff.matrix)
        assert np.array_equal(from_csv.labels, from_arff.labels)
        assert from_csv.schema.feature_names == from_arff.schema.feature_names


class TestSummarize:
    def test_counts_and_ratio(self):
        project = make_project(["a"], [[1.0], [2.0], [3.0], [4.0]], [0, 1, 1, 0])
        s = summarize(project)
        assert (s.instance_count, s.defect_count, s.metric_count) == (4, 2, 1)
        assert s.defect_ratio == 0.5

    def test_all_clean(self):
        project = make_project(["a"], [[1.0], [2.0]], [0, 0])
        assert summarize(project).defect_ratio == 0.0


class TestIntersectFeatures:
    def test_common_in_first_projects_order(self):
        a = make_project(["wmc", "dit", "loc"], [[1, 2, 3], [4, 5, 6]], [0, 1], name="a")
        b = make_project(["loc", "wmc", "cbo"], [[30, 10, 7], [60, 40, 8]], [1, 0], name="b")
        ra, rb = intersect_features(a, b)
        assert ra.schema.canonical_names() == ("wmc", "loc")
        assert rb.schema.canonical_names() == ("wmc", "loc")
        assert np.array_equal(ra.matrix, [[1, 3], [4, 6]])
        assert np.array_equal(rb.matrix, [[10, 30], [40, 60]])

    def test_identical_schemas_identity(self):
        a = make_project(["x", "y"], [[1, 2], [3, 4]], [0, 1], name="a")
        b = make_project(["x", "y"], [[5, 6], [7, 8]], [1, 0], name="b")
        ra, rb = intersect_features(a, b)
        assert np.array_equal(ra.matrix, a.matrix)
        assert np.array_equal(rb.matrix, b.matrix)

    def test_local_names_kept(self):
        b_schema = FeatureSchema(feature_names=("wmc",), label_column="bug")
        b = Project(name="b", dataset_family="f", schema=b_schema,
                    matrix=np.array([[3.0], [4.0]]), labels=np.array([0, 1]))
        a = Project(
            name="a",
            dataset_family="g",
            schema=FeatureSchema(
                feature_names=("NumMethods",),
                label_column="bug",
                alias_map={"nummethods": "wmc"},
            ),
            matrix=np.array([[1.0], [2.0]]),
            labels=np.array([0, 1]),
        )
        ra, rb = intersect_features(a, b)
        assert ra.schema.feature_names == ("NumMethods",)
        assert rb.schema.feature_names == ("wmc",)

    def test_disjoint_raises(self):
        a = make_project(["a1"], [[1], [2]], [0, 1], name="a")
        b = make_project(["b1"], [[3], [4]], [0, 1], name="b")
        with pytest.raises(NoCommonMetricsError, match="no common metrics"):
            intersect_features(a, b)

    @given(st.data())
    def test_positional_alignment_property(self, data):
        pool = ["m0", "m1", "m2", "m3", "m4", "m5"]
        a_names = data.draw(st.permutations(pool).map(lambda p: p[:4]))
        b_names = data.draw(st.permutations(pool).map(lambda p: p[:4]))
        a = make_project(a_names, np.arange(8.0).reshape(2, 4), [0, 1], name="a")
        b = make_project(b_names, np.arange(8.0, 16.0).reshape(2, 4), [0, 1], name="b")
        common = set(a_names) & set(b_names)
        if not common:
            with pytest.raises(NoCommonMetricsError):
                intersect_features(a, b)
            return
        ra, rb = intersect_features(a, b)
        assert ra.schema.canonical_names() == rb.schema.canonical_names()
        assert set(ra.schema.canonical_names()) == common
        # order follows the first project's schema
        ordered = [n for n in a.schema.canonical_names() if n in common]
        assert list(ra.schema.canonical_names()) == ordered
