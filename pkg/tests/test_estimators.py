import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from conftest import benzene_points, diagram_of
from phtop import InvalidInput, PersistenceDiagram, PhfVectorizer, VietorisRipsPersistence


def clouds():
    rng = np.random.default_rng(40)
    return [rng.random((5, 3)), rng.random((7, 3)), benzene_points()]


class TestVietorisRipsPersistence:
    def test_fit_returns_self(self):
        est = VietorisRipsPersistence()
        assert est.fit(clouds()) is est

    def test_transform_produces_diagrams(self):
        diags = VietorisRipsPersistence().fit_transform(clouds())
        assert len(diags) == 3
        assert all(isinstance(d, PersistenceDiagram) for d in diags)
        assert diags[2].close_to(diagram_of(benzene_points()), tol=1e-12)

    def test_get_set_params_roundtrip(self):
        est = VietorisRipsPersistence(threshold=2.5, max_homology_dim=1)
        params = est.get_params()
        assert params == {"threshold": 2.5, "max_homology_dim": 1}
        est2 = VietorisRipsPersistence().set_params(**params)
        assert est2.get_params() == params

    def test_clone(self):
        est = VietorisRipsPersistence(threshold=1.0)
        assert clone(est).get_params() == est.get_params()

    def test_validates_input(self):
        with pytest.raises(InvalidInput):
            VietorisRipsPersistence().fit([np.zeros((2, 2))])
        with pytest.raises(InvalidInput):
            VietorisRipsPersistence(max_homology_dim=5).fit(clouds())

    def test_max_dim_limits_diagram(self):
        diags = VietorisRipsPersistence(max_homology_dim=0).fit_transform(
            [benzene_points()]
        )
        assert diags[0].count(1) == 0 and diags[0].count(2) == 0


class TestPhfVectorizer:
    def test_matrix_shape_paper18(self):
        diags = VietorisRipsPersistence().fit_transform(clouds())
        X = PhfVectorizer().fit_transform(diags)
        assert X.shape == (3, 18)
        assert np.isfinite(X).all()

    def test_matrix_shape_full(self):
        diags = VietorisRipsPersistence().fit_transform(clouds())
        X = PhfVectorizer(layout="full", resolution=3).fit_transform(diags)
        assert X.shape == (3, 12 + 27)

    def test_pipeline_composition(self):
        pipe = Pipeline(
            [("rips", VietorisRipsPersistence()), ("phf", PhfVectorizer())]
        )
        X = pipe.fit_transform(clouds())
        assert X.shape == (3, 18)

    def test_params_feed_through(self):
        diags = VietorisRipsPersistence().fit_transform([benzene_points()])
        x2 = PhfVectorizer(log_base=2.0).fit_transform(diags)[0, 0]
        xe = PhfVectorizer(log_base=np.e).fit_transform(diags)[0, 0]
        assert x2 == pytest.approx(xe / np.log(2.0), rel=1e-9)

    def test_clone_and_params(self):
        est = PhfVectorizer(layout="full", resolution=7, sigma=0.3)
        assert clone(est).get_params() == est.get_params()
