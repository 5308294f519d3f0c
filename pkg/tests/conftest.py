import pytest
from config.experiment_config import ExperimentConfig
from core.geometry.channel_profile import build_profile
from core.geometry.mapped_grid import build_mapped_grid
from core.geometry.profile_kind import ProfileKind
from core.operators.discrete_operator import assemble_A0
from core.operators.operator_config import OperatorConfig
from core.operators.transfer_operators import build_transfer

SMALL_NX = 17
SMALL_NZ = 5
SMALL_N1D = 64

@pytest.fixture
def sine_profile():
    return build_profile(ProfileKind.SINE, (0.3,))

@pytest.fixture
def straight_profile():
    return build_profile(ProfileKind.CONSTANT, (1.0,))

@pytest.fixture
def sine_grid(sine_profile):
    return build_mapped_grid(sine_profile, SMALL_NX, SMALL_NZ)

@pytest.fixture
def straight_grid(straight_profile):
    return build_mapped_grid(straight_profile, SMALL_NX, SMALL_NZ)

@pytest.fixture
def sine_transfer(sine_grid):
    return build_transfer(sine_grid)

@pytest.fixture
def operator_config():
    return OperatorConfig(mu=1.0, alpha=0.25)

@pytest.fixture
def limit_operator(sine_profile, operator_config):
    return assemble_A0(sine_profile, operator_config, SMALL_N1D)

@pytest.fixture
def small_config():
    return ExperimentConfig(
        profile_kind=ProfileKind.CONSTANT,
        profile_params=(1.0,),
        nx=SMALL_NX,
        nz=SMALL_NZ,
        n1d=SMALL_N1D,
        n_modes=4,
        m_max=3,
        nodes_per_axis=11,
        eps_list=(0.5, 0.25, 0.125, 0.0625),
        equilibrium_seeds=(-2.5, -0.5, 0.0, 0.5, 2.5),
    )
