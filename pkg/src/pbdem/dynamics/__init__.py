"""Deterministic simulators and excitation generators."""

from .adapter import (CRASH_INPUTS, ExternalAdapter, ModelAdapter,
                      crash_energy, get_adapter, read_kv, register_adapter,
                      run_external_model, write_kv)
from .boucwen import (BoucWenParams, MDOFBoucWenConfig, boucwen_rate,
                      rayleigh_damping, shear_frame_matrices,
                      simulate_boucwen, ultimate_z)
from .excitation import (IPSDConfig, generate_spectral_realization,
                         generate_white_noise, ipsd_normalize, ipsd_psd,
                         ipsd_shape, spectral_cutoff)
from .sdof import SDOFConfig, sdof_stationary_variance, simulate_sdof
from .trajectory import Trajectory, response_max

__all__ = [
    "Trajectory", "response_max",
    "SDOFConfig", "simulate_sdof", "sdof_stationary_variance",
    "generate_white_noise",
    "IPSDConfig", "ipsd_shape", "ipsd_normalize", "ipsd_psd",
    "spectral_cutoff", "generate_spectral_realization",
    "BoucWenParams", "MDOFBoucWenConfig", "boucwen_rate", "ultimate_z",
    "shear_frame_matrices", "rayleigh_damping", "simulate_boucwen",
    "ModelAdapter", "ExternalAdapter", "run_external_model", "crash_energy",
    "CRASH_INPUTS", "get_adapter", "register_adapter", "write_kv", "read_kv",
]
