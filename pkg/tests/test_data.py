import json

import numpy as np
import pytest

from jroc import (
    AttributeSchema,
    Dataset,
    EmptyDatasetError,
    FeatureConfiguration,
    Instance,
    MissingLabelError,
    RaggedRowsError,
    SchemaMismatchError,
    ValidationError,
    load_csv,
    mask_instance,
    mask_matrix,
    split_dataset,
)

from helpers import make_mixed_dataset, make_numeric_dataset


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_load_csv_infers_kinds_and_classes(tmp_path):
    p = _write(
        tmp_path,
        "t.csv",
        "x,y,label\n1.5,u,a\n2.5,?,b\n3.5,w,a\n",
    )
    d = load_csv(p)
    assert d.m == 2 and d.n == 3 and d.c == 2
    assert [a.kind for a in d.schema] == ["numeric", "nominal"]
    assert d.schema[1].values == ("u", "w")
    assert d.classes == ("a", "b")
    assert d.instances[0].values == (1.5, 0)
    assert d.instances[1].values == (2.5, None)
    assert [i.label for i in d.instances] == [0, 1, 0]
    assert d.name == "t"


def test_load_csv_iris_shape(iris):
    assert iris.m == 4 and iris.n == 150 and iris.c == 3
    assert all(a.kind == "numeric" for a in iris.schema)
    assert iris.classes == ("setosa", "versicolor", "virginica")


def test_load_csv_diabetes_shape(diabetes):
    assert diabetes.m == 8 and diabetes.n == 768 and diabetes.c == 2
    assert np.isnan(diabetes.X).any()


def test_load_csv_missing_token_is_exact(tmp_path):
    p = _write(tmp_path, "t.csv", "x,label\nNA,a\n1.0,b\n")
    d = load_csv(p, missing_token="NA")
    assert d.instances[0].values == (None,)
    d2 = load_csv(p, missing_token="?")
    assert d2.schema[0].kind == "nominal"


def test_load_csv_label_column_by_name_and_index(tmp_path):
    p = _write(tmp_path, "t.csv", "label,x\na,1\nb,2\n")
    d = load_csv(p, label_column="label")
    assert d.schema[0].name == "x"
    assert d.classes == ("a", "b")
    d2 = load_csv(p, label_column=0)
    assert d2.classes == ("a", "b")


def test_load_csv_errors_are_distinct(tmp_path):
    ragged = _write(tmp_path, "r.csv", "x,y,label\n1,2,a\n1,a\n")
    with pytest.raises(RaggedRowsError):
        load_csv(ragged)
    empty = _write(tmp_path, "e.csv", "x,label\n")
    with pytest.raises(EmptyDatasetError):
        load_csv(empty)
    nolabel = _write(tmp_path, "n.csv", "x,y\n1,2\n")
    with pytest.raises(MissingLabelError):
        load_csv(nolabel, label_column="label")
    missing_label_cell = _write(tmp_path, "m.csv", "x,label\n1,a\n2,?\n")
    with pytest.raises(ValidationError):
        load_csv(missing_label_cell)
    with pytest.raises(OSError):
        load_csv(str(tmp_path / "absent.csv"))


def test_load_csv_schema_sidecar_overrides_inference(tmp_path):
    p = _write(tmp_path, "t.csv", "x,y,label\n1.5,u,a\n2.5,w,b\n")
    sidecar = {
        "attributes": [
            {"name": "x", "kind": "nominal", "values": ["1.5", "2.5"]},
            {"name": "y", "kind": "nominal", "values": ["w", "u"]},
        ],
        "classes": ["b", "a"],
    }
    (tmp_path / "t.csv.schema.json").write_text(json.dumps(sidecar))
    d = load_csv(p)
    assert [a.kind for a in d.schema] == ["nominal", "nominal"]
    assert d.classes == ("b", "a")
    assert d.instances[0].values == (0, 1)
    assert d.instances[0].label == 1


def test_load_csv_sidecar_mismatch(tmp_path):
    p = _write(tmp_path, "t.csv", "x,label\n1.5,a\n2.5,b\n")
    sidecar = {
        "attributes": [{"name": "z", "kind": "numeric"}],
        "classes": ["a", "b"],
    }
    (tmp_path / "t.csv.schema.json").write_text(json.dumps(sidecar))
    with pytest.raises(SchemaMismatchError):
        load_csv(p)


def test_dataset_encoding_matrix(tmp_path):
    p = _write(tmp_path, "t.csv", "x,y,label\n1.5,u,a\n?,w,b\n")
    d = load_csv(p)
    assert d.X.shape == (2, 2)
    assert np.isnan(d.X[1, 0])
    assert d.X[0, 1] == 0.0 and d.X[1, 1] == 1.0
    assert d.y.tolist() == [0, 1]
    with pytest.raises(ValueError):
        d.X[0, 0] = 9.0


def test_mask_instance_basics():
    x = Instance((5.1, 3.5, 1.4, 0.2), 0)
    cfg = FeatureConfiguration.from_bits("0001")
    masked = mask_instance(x, cfg)
    assert masked.values == (None, None, None, 0.2)
    assert masked.label == 0
    full = FeatureConfiguration.full(4)
    assert mask_instance(x, full).values == x.values
    x_null = Instance((None, 3.5, 1.4, 0.2), 1)
    assert mask_instance(x_null, full).values == (None, 3.5, 1.4, 0.2)


def test_mask_instance_width_mismatch():
    x = Instance((1.0, 2.0), 0)
    with pytest.raises(ValidationError):
        mask_instance(x, FeatureConfiguration.full(3))


def test_mask_instance_idempotent_and_monotone():
    rng = np.random.default_rng(3)
    for _ in range(50):
        d = make_mixed_dataset(rng, n=6, m=5, null_rate=0.3)
        x = d.instances[0]
        sub = FeatureConfiguration(5, int(rng.integers(0, 32)))
        sup_mask = sub.mask | int(rng.integers(0, 32))
        sup = FeatureConfiguration(5, sup_mask)
        once = mask_instance(x, sub)
        assert mask_instance(once, sub).values == once.values
        nn_sub = {j for j, v in enumerate(mask_instance(x, sub).values) if v is not None}
        nn_sup = {j for j, v in enumerate(mask_instance(x, sup).values) if v is not None}
        assert nn_sub <= nn_sup


def test_mask_matrix_mirrors_mask_instance():
    rng = np.random.default_rng(5)
    d = make_mixed_dataset(rng, n=25, m=5, null_rate=0.2)
    cfg = FeatureConfiguration.from_bits("10110")
    masked = mask_matrix(d.X, cfg)
    for i, inst in enumerate(d.instances):
        expect = mask_instance(inst, cfg).values
        for j, v in enumerate(expect):
            if v is None:
                assert np.isnan(masked[i, j])
            else:
                assert masked[i, j] == float(v)


def test_split_iris_two_thirds(iris):
    work, test = split_dataset(iris, (2.0 / 3.0, 1.0 / 3.0), seed=7)
    assert work.n == 100 and test.n == 50
    half1, half2 = split_dataset(work, (0.5, 0.5), seed=7)
    assert half1.n == 50 and half2.n == 50


def test_split_identity():
    rng = np.random.default_rng(0)
    d = make_numeric_dataset(rng, n=30)
    (only,) = split_dataset(d, (1.0,), seed=5)
    assert sorted(i.values for i in only.instances) == sorted(
        i.values for i in d.instances
    )


def test_split_is_disjoint_partition_and_stratified():
    rng = np.random.default_rng(1)
    for trial in range(20):
        n = int(rng.integers(30, 120))
        c = int(rng.integers(2, 5))
        d = make_numeric_dataset(rng, n=n, m=3, c=c)
        parts = split_dataset(d, (0.5, 0.3, 0.2), seed=trial)
        assert sum(p.n for p in parts) == d.n
        pooled = sorted(
            (i.values, i.label) for p in parts for i in p.instances
        )
        assert pooled == sorted((i.values, i.label) for i in d.instances)
        counts = np.bincount(d.y, minlength=c)
        for frac, p in zip((0.5, 0.3, 0.2), parts):
            pc = np.bincount(p.y, minlength=c)
            for k in range(c):
                assert abs(pc[k] - frac * counts[k]) <= 1.0 + 1e-9


def test_split_deterministic_and_seed_sensitive():
    rng = np.random.default_rng(2)
    d = make_numeric_dataset(rng, n=80)
    a1, b1 = split_dataset(d, (0.5, 0.5), seed=9)
    a2, b2 = split_dataset(d, (0.5, 0.5), seed=9)
    assert [i.values for i in a1.instances] == [i.values for i in a2.instances]
    a3, _ = split_dataset(d, (0.5, 0.5), seed=10)
    assert [i.values for i in a1.instances] != [i.values for i in a3.instances]


def test_split_errors():
    rng = np.random.default_rng(4)
    d = make_numeric_dataset(rng, n=40)
    with pytest.raises(ValidationError):
        split_dataset(d, (0.6, 0.6), seed=0)
    with pytest.raises(ValidationError):
        split_dataset(d, (0.5, -0.5, 1.0), seed=0)
    tiny = Dataset(
        d.schema,
        ("c0", "c1"),
        (Instance((0.0, 0.0, 0.0, 0.0), 0), Instance((1.0, 1.0, 1.0, 1.0), 1)),
    )
    with pytest.raises(ValidationError):
        split_dataset(tiny, (0.4, 0.3, 0.3), seed=0)


def test_dataset_invariants():
    schema = (AttributeSchema("x", "numeric", None),)
    with pytest.raises(ValidationError):
        Dataset(schema, ("a", "b"), (Instance((1.0,), 2),))
    with pytest.raises(ValidationError):
        Dataset(schema, ("a", "b"), (Instance((1.0, 2.0), 0),))
    with pytest.raises(ValidationError):
        AttributeSchema("x", "nominal", ())
    with pytest.raises(ValidationError):
        AttributeSchema("x", "nominal", ("u", "u"))
    with pytest.raises(ValidationError):
        Dataset(
            (AttributeSchema("x", "numeric", None), AttributeSchema("x", "numeric", None)),
            ("a", "b"),
            (Instance((1.0, 2.0), 0),),
        )
