"""Operating points used throughout the test and demo suites.

Each entry pins one reference operating point of the modelled system at a
single point of its sweep axis (the pinned value and the curve-variant
choices are recorded in `pin`).  `axis` names the swept field as a dotted
config path so the corresponding curve can be reproduced.
"""

from __future__ import annotations

import copy
import json

from .config import config_from_dict

__all__ = ["FIGURES", "figure_config", "figure_dict", "write_figure_configs"]


def _base(alpha_o=2.296, beta_o=2, s=1, eps=1.0, p_o=0.0, phi_o=10.0,
          mu_s_db=None, alpha=(2, 2, 2), mu=(2, 2, 2), phi=(15.0, 10.0, 10.0),
          psi_q=0.0, psi_t=None, scenario="I", rate=0.05):
    fso = {"alpha_o": alpha_o, "beta_o": beta_o, "g": 2.0, "omega_total": 1.0,
           "epsilon": eps, "s": s, "avg_snr_db": phi_o, "blockage_p": p_o}
    if mu_s_db is not None:
        fso["electrical_snr_db"] = mu_s_db
    power = {"psi_q_db": psi_q, "scenario": scenario}
    if psi_t is not None:
        power["psi_t_db"] = psi_t
    return {
        "rf_sr": {"alpha": alpha[0], "mu": mu[0], "avg_snr_db": phi[0]},
        "rf_sp": {"alpha": alpha[1], "mu": mu[1], "avg_snr_db": phi[1]},
        "rf_se": {"alpha": alpha[2], "mu": mu[2], "avg_snr_db": phi[2]},
        "fso": fso,
        "power": power,
        "target_rate": rate,
    }


FIGURES = {
    # EST vs interference ceiling; IM/DD, heavy blockage.
    "fig2": {
        "config": _base(s=2, eps=1.0, p_o=0.5, mu_s_db=10.0,
                        phi=(15.0, 10.0, 5.0), psi_q=10.0),
        "axis": "power.psi_q_db",
        "metric": "est",
        "pin": "psi_q=10 dB; alpha_p=alpha_e=2 variant; mu_s pinned 10 dB so "
               "phi_e = mu_s - 5 dB = 5 dB",
    },
    # SPSC vs optical average SNR; mixed non-linearities (quadrature route).
    "fig3": {
        "config": _base(s=2, eps=1.0, p_o=0.5, phi_o=10.0,
                        alpha=(2, 5, 5), mu=(6, 6, 6), phi=(15.0, 15.0, 0.0),
                        psi_q=15.0),
        "axis": "fso.avg_snr_db",
        "metric": "spsc",
        "pin": "phi_o=10 dB; alpha_r=2, s=2 variant",
    },
    # SOP vs interference ceiling for primary cluster counts.
    "fig4": {
        "config": _base(s=1, eps=1.0, p_o=0.1, phi_o=10.0,
                        mu=(2, 2, 2), phi=(15.0, 10.0, 10.0), psi_q=0.0),
        "axis": "power.psi_q_db",
        "metric": "sop",
        "pin": "psi_q=0 dB; mu_p=2 variant",
    },
    # SOP vs primary-link average SNR.
    "fig5": {
        "config": _base(s=1, eps=1.0, p_o=0.1, mu_s_db=12.0,
                        mu=(2, 2, 2), phi=(15.0, 10.0, 5.0), psi_q=-5.0),
        "axis": "rf_sp.avg_snr_db",
        "metric": "sop",
        "pin": "phi_p=10 dB; mu_e=2, phi_e=5 dB variant; mu_s pinned 12 dB",
    },
    # SOP vs legitimate-link average SNR.
    "fig6": {
        "config": _base(s=1, eps=1.0, p_o=0.1, phi_o=10.0,
                        mu=(2, 2, 2), phi=(15.0, 15.0, 15.0), psi_q=-5.0),
        "axis": "rf_sr.avg_snr_db",
        "metric": "sop",
        "pin": "phi_r=15 dB; mu_r=2 variant",
    },
    # Scenario II: SOP vs transmit cap.
    "fig7": {
        "config": _base(s=1, eps=6.7, p_o=0.2, mu_s_db=10.0,
                        mu=(2, 2, 2), phi=(-5.0, -5.0, 5.0),
                        psi_q=5.0, psi_t=10.0, scenario="II"),
        "axis": "power.psi_t_db",
        "metric": "sop",
        "pin": "psi_t=10 dB; mu_p=2 variant; mu_s pinned 10 dB",
    },
    # Scenario II: EST vs primary-link SNR for transmit caps (floor > 15 dB).
    "fig8": {
        "config": _base(s=2, eps=6.7, p_o=0.1, phi_o=-5.0,
                        mu=(2, 2, 2), phi=(10.0, 0.0, -5.0),
                        psi_q=-10.0, psi_t=15.0, scenario="II"),
        "axis": "power.psi_t_db",
        "metric": "est",
        "pin": "phi_p=0 dB, psi_t=15 dB variant",
    },
    # SOP vs electrical SNR under blockage/pointing variants.
    "fig9": {
        "config": _base(s=1, eps=1.0, p_o=0.5, phi_o=10.0,
                        mu=(6, 6, 6), phi=(15.0, 15.0, -5.0), psi_q=-10.0),
        "axis": "fso.avg_snr_db",
        "metric": "sop",
        "pin": "mu_s=10 dB; P_o=0.5, eps=1 variant",
    },
    # Scenario II: SOP vs optical SNR across turbulence/detection.
    "fig10": {
        "config": _base(s=1, eps=6.7, p_o=0.1, phi_o=10.0,
                        mu=(6, 6, 6), phi=(15.0, 15.0, -5.0),
                        psi_q=-10.0, psi_t=-10.0, scenario="II"),
        "axis": "fso.avg_snr_db",
        "metric": "sop",
        "pin": "phi_o=10 dB; strong turbulence (2.296, 2), s=1 variant",
    },
    # Scenario I twin of fig10 with accurate pointing.
    "fig10b": {
        "config": _base(s=1, eps=1.0, p_o=0.1, phi_o=10.0,
                        mu=(6, 6, 6), phi=(15.0, 15.0, -5.0), psi_q=-10.0),
        "axis": "fso.avg_snr_db",
        "metric": "sop",
        "pin": "phi_o=10 dB; strong turbulence, s=1 variant",
    },
    # SOP vs optical SNR across turbulence/pointing; IM/DD.
    "fig11": {
        "config": _base(s=2, eps=6.7, p_o=0.1, phi_o=10.0,
                        mu=(6, 6, 6), phi=(15.0, 15.0, -5.0), psi_q=-10.0),
        "axis": "fso.avg_snr_db",
        "metric": "sop",
        "pin": "phi_o=10 dB; strong turbulence, eps=6.7 variant",
    },
    # small smoke config with every default exercised
    "minimal": {
        "config": {
            "rf_sr": {"alpha": 2, "mu": 1, "avg_snr_db": 10.0},
            "rf_sp": {"alpha": 2, "mu": 1, "avg_snr_db": 0.0},
            "rf_se": {"alpha": 2, "mu": 1, "avg_snr_db": 0.0},
            "fso": {"alpha_o": 2.296, "beta_o": 2, "g": 2.0,
                    "omega_total": 1.0, "epsilon": 1.0, "avg_snr_db": 10.0},
            "power": {"psi_q_db": 0.0},
        },
        "axis": "power.psi_q_db",
        "metric": "sop",
        "pin": "defaults: s=1, blockage 0, scenario I, rate 0.05",
    },
}

TURBULENCE = {"strong": (2.296, 2), "moderate": (4.2, 3), "weak": (8, 4)}


def figure_dict(name):
    try:
        return copy.deepcopy(FIGURES[name]["config"])
    except KeyError:
        raise KeyError(f"unknown figure config {name!r}; "
                       f"have {sorted(FIGURES)}") from None


def figure_config(name):
    """Validated SecrecyConfig for a named operating point."""
    return config_from_dict(figure_dict(name))


def write_figure_configs(directory):
    """Dump every named operating point as a JSON config file."""
    import os

    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, entry in FIGURES.items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(entry["config"], fh, indent=2, sort_keys=True)
            fh.write("\n")
        paths.append(path)
    return paths
