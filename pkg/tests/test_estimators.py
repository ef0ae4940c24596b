import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from indexcode import CellularIndexCoder, MinrankIndexCoder
from indexcode._validation import check_instance, check_messages
from indexcode.exceptions import InstanceError


def test_minrank_fit_transform(fixture_path, inst_b):
    est = MinrankIndexCoder().fit(fixture_path("instance_b.txt"))
    assert est.n_opt_ == 3
    assert est.transform([[1, 0, 1, 1]]).tolist() == [[0, 1, 1]]
    assert est.predict().all() and est.score() == 1.0
    assert MinrankIndexCoder().fit(inst_b).generator_ == est.generator_


def test_fit_from_text(fixture_path):
    text = fixture_path("instance_c.txt").read_text()
    est = CellularIndexCoder().fit(text)
    assert est.n_opt_ == 2 and est.dims_.d123 == 2


def test_cellular_transform(inst_c):
    est = CellularIndexCoder().fit(inst_c)
    out = est.transform(np.array([[1, 1, 0], [1, 0, 1], [0, 0, 0]]))
    assert out.tolist() == [[0, 1], [0, 0], [0, 0]]


def test_params_and_clone():
    est = MinrankIndexCoder(budget=1000, workers=2, use_prop1=False)
    assert est.get_params() == {"budget": 1000, "workers": 2, "use_prop1": False}
    copy = clone(est)
    assert copy.get_params() == est.get_params()
    est.set_params(budget=5)
    assert est.budget == 5


def test_not_fitted():
    with pytest.raises(NotFittedError):
        MinrankIndexCoder().transform([[0]])


def test_cellular_needs_coverage(inst_a):
    with pytest.raises(InstanceError):
        CellularIndexCoder().fit(inst_a)


def test_check_instance_rejects_other_types():
    with pytest.raises(TypeError):
        check_instance(42)


def test_check_messages():
    assert check_messages([1, 2, 3], 3, 2).tolist() == [[1, 0, 1]]
    assert check_messages(np.array([[1.0, 2.0]]), 2, 3).tolist() == [[1, 2]]
    with pytest.raises(ValueError):
        check_messages([[1, 0]], 3, 2)
    with pytest.raises(ValueError):
        check_messages([[0.5, 1]], 2, 2)
