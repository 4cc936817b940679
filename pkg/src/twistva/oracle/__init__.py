"""Fock space models used to check the vertex algebra layer independently."""
from .boson import Oscillators, VertexOp, boson_ops, boson_vev
from .checks import (CheckReport, boson_bracket, boson_vertex_vev, closed_vev, correspondence_check,
                     fermion_vev, heisenberg_mode, heisenberg_scale, heisenberg_shift_check,
                     heisenberg_vev, highest_weight_check, highest_weight_vectors, highest_weights,
                     lattice_heisenberg_vev, mode_bracket, mode_normal_order, normal_order_check,
                     oracle_equivalence, order_n_heisenberg, order_n_target, psi_map,
                     tva_state_series)
from .clifford import Clifford, field_states, fock_vev

__all__ = ["Oscillators", "VertexOp", "boson_ops", "boson_vev", "CheckReport", "boson_bracket",
           "boson_vertex_vev", "closed_vev", "correspondence_check", "fermion_vev", "heisenberg_mode",
           "heisenberg_scale", "heisenberg_shift_check", "heisenberg_vev", "highest_weight_check",
           "highest_weight_vectors", "highest_weights", "lattice_heisenberg_vev", "mode_bracket",
           "mode_normal_order", "normal_order_check", "oracle_equivalence", "order_n_heisenberg",
           "order_n_target", "psi_map", "tva_state_series", "Clifford", "field_states", "fock_vev"]
