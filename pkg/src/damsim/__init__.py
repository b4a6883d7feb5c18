"""Delay-aligned single-carrier link simulation toolkit.

The package simulates a multi-antenna wideband link in which every
significant channel tap gets its own transmit beam and delay
pre-compensation, so that all multipath components arrive aligned.  It
covers channel synthesis, pilot-based sparse channel estimation, the three
per-tap beamforming schemes, SINR/rate evaluation under perfect and
estimated channel knowledge, an OFDM baseline, and a reproducible
experiment harness.
"""

from .beamforming import (BeamformerSet, EffectiveChannelGroups,
                          beamform_estimated, delay_precompensation,
                          effective_channel_groups, mmse_beamformer,
                          mrt_beamformer, zf_beamformer)
from .channel import (DOWNLINK, UPLINK, PathSet, SignificantTaps, TapChannel,
                      downlink_channel, generate_paths, raised_cosine,
                      select_significant_taps, synthesize_taps, tap_powers,
                      uplink_channel)
from .config import SystemConfig, dbm_to_watt, desk_config, load_config, full_scale_config
from .estimation import (EstimationResult, MeasurementOperator, PilotSequence,
                         bomp_estimate, build_pilot_matrix,
                         exhaustive_support_oracle, generate_pilot, nmse,
                         omp_estimate, simulate_uplink_rx)
from .experiments import (ExperimentSpec, SweepRecord, records_to_csv,
                          run_demo, run_experiment, run_nmse_sweep,
                          run_rate_vs_pilot, run_rate_vs_power, trial_rng,
                          write_csv)
from .link import (DelayGroupMap, RateReport, achievable_rate,
                   composite_delay_coefficients, delay_group_map,
                   simulate_link, sinr_estimated, sinr_perfect)
from .ofdm import (equispaced_pilot_indices, ofdm_channel_estimate, ofdm_rate,
                   pilot_dictionary, simulate_ofdm_pilots, subcarrier_channels,
                   water_filling)

__version__ = "0.1.0"
