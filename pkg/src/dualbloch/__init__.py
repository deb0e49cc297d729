"""Two-qubit pure-state simulator with a dual-Bloch-sphere scene model.

The package splits into small, pure layers:

- states: canonical amplitudes, Pauli generators, rotations, Schmidt
- measures: purity, concurrence, entanglement classification
- scene: dual-sphere extraction, reconstruction, JSON serialization
- render: deterministic SVG drawings of scenes
- rules: graphical quarter-turn rules and the 60-state stabilizer graph
- gates: rotation sequences, the CNOT decomposition, scene traces
- cli / api: command line and HTTP front ends
"""
from .measures import Classification, EntanglementKind, classify, concurrence, purity
from .render import RenderOptions, render_svg
from .scene import (
    InvalidSceneError,
    LayerKind,
    Scene,
    SceneLayer,
    SceneParseError,
    SphereView,
    deserialize_scene,
    mes_state_from_frames,
    minimal_rotation,
    scene_from_doc,
    scene_from_state,
    scene_to_doc,
    scenes_equivalent,
    serialize_scene,
    state_from_scene,
    validate_scene,
)
from .states import (
    BASIS_LABELS,
    DOUBLE_GENERATORS,
    GENERATORS,
    LOCAL_GENERATORS,
    Generator,
    NonUnitaryError,
    SchmidtForm,
    StateParseError,
    TwoQubitState,
    apply,
    bloch_of_qubit,
    bloch_vector,
    correlation_matrix,
    expectation,
    fidelity,
    format_complex,
    format_state,
    generator_matrix,
    haar_qubit_unitary,
    haar_state,
    named_state,
    parse_state,
    pauli_matrix,
    product_state,
    qubit_from_bloch,
    random_maximal_state,
    random_product_state,
    reduced_density,
    rotation_unitary,
    schmidt,
)
from .rules import (
    AxisRef,
    NotStabilizerError,
    Plane,
    PlaneClass,
    StabilizerEdge,
    StabilizerGraph,
    UnsupportedConfigurationError,
    apply_rule,
    classify_plane,
    enumerate_stabilizers,
    eigenplanes,
    graph_to_doc,
    graph_to_edge_list,
    is_stabilizer_state,
    plane_census,
    plane_of,
)
from .gates import (
    CNOT_MATRIX,
    GateTrace,
    RotationStep,
    TraceStep,
    cnot_sequence,
    compose,
    format_sequence,
    parse_sequence,
    trace,
)

__version__ = "0.1.0"
