#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlab/exact_oracle.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/spin_model.hpp"

namespace spinlab {

// Sampling implementations of the five chains, for systems too large to
// enumerate. One sampler owns its Rng; reproducible given (system, spec).

Config glauber_step(const SpinSystem& sys, Config sigma, Rng& rng);

// Down: drop each occupied vertex w.p. theta; Up: resample from the
// field-tilted conditional, exactly or by nested Glauber sweeps.
Config vertex_field_step(const SpinSystem& sys, double theta, Config sigma, Rng& rng,
                         ChainSpec::UpMode up_mode = ChainSpec::UpMode::exact_enumeration,
                         long sweeps = 0);

// Down: drop each non-monochromatic edge w.p. theta, pin the endpoints of the
// kept edges to their current spins; Up: resample from the interaction-tilted
// conditional.
Config edge_field_step(const SpinSystem& sys, double theta, Config sigma, Rng& rng,
                       ChainSpec::UpMode up_mode = ChainSpec::UpMode::exact_enumeration,
                       long sweeps = 0);

// Generic event form: drop each occurring event A w.p. theta_A; resample from
// mu tilted by prod theta_A^{1[. in A]} conditioned on the kept events.
Config event_field_step(const SpinSystem& sys, const EventFamily& fam, Config sigma, Rng& rng,
                        ChainSpec::UpMode up_mode = ChainSpec::UpMode::exact_enumeration,
                        long sweeps = 0);

Config swendsen_wang_step(const SpinSystem& sys, Config sigma, Rng& rng);

// All-zeros completed greedily against the pinning.
Config initial_state(const SpinSystem& sys);

enum class RecordPolicy { none, thin, all };

struct Trajectory {
  std::vector<Config> states;  // recorded states (always includes the last)
  long step_count = 0;
  uint64_t rng_trace_checksum = 0;
  long thin_stride = 1;
};

Trajectory run_chain(const SpinSystem& sys, const ChainSpec& chain, long steps,
                     RecordPolicy record = RecordPolicy::all, long thin_stride = 1,
                     Config initial = UINT32_MAX);

}  // namespace spinlab
