import pytest

import singext as sx


@pytest.fixture(scope="session")
def one_dim():
    return sx.build_one_dim_model()


@pytest.fixture(scope="session")
def padic():
    return sx.build_padic_model(2, 1.5)


@pytest.fixture(scope="session")
def padic_r(padic):
    return sx.solve_homogeneous_R(padic.family, padic.gram).matrix


@pytest.fixture(scope="session")
def scaling():
    return sx.build_scaling_invariant_3d(1.5)


@pytest.fixture(scope="session")
def scaling_r(scaling):
    return sx.solve_homogeneous_R(scaling.family, scaling.gram).matrix


@pytest.fixture(scope="session")
def point_models():
    return {d: sx.build_point_interaction(d) for d in (1, 2, 3)}
