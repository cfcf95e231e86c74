"""Quantum-kernel radial basis function networks.

Classical data is encoded into simulated multi-qubit states (two qubits per
feature, full-angle RX rotations, entangling unitary), kernel matrices are
built from state fidelities or classical distance kernels, and the network is
fitted by a Moore-Penrose pseudoinverse solve for interpolation and native
multi-class classification.
"""

from .centres import gaussian_centres, kmeans_centres, uniform_centres
from .datasets import (
    Dataset,
    SplitDataset,
    default_alpha,
    gen_logistic_map,
    gen_polynomial,
    gen_sine,
    gen_spiral,
    load_iris,
    split,
)
from .errors import (
    CapabilityError,
    ConfigurationError,
    DomainError,
    IngestionError,
    NumericError,
    QrbfError,
    UsageError,
)
from .evaluation import accuracy, confusion_matrix, decision_boundary_grid, mse
from .experiments import ExperimentConfig, Seeds, run_experiment, run_suite
from .kernels import KernelSpec, build_kernel_matrix, eval_classical, eval_quantum
from .network import (
    RbfModel,
    classify,
    fit,
    load_model,
    one_hot,
    predict,
    pseudo_inverse_solve,
    save_model,
)
from .quantum import (
    Entangler,
    FeatureMap,
    encode,
    fidelity,
    identity_entangler,
    make_entangler,
    single_qubit_rx_state,
)

__version__ = "0.1.0"
