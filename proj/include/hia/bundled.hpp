// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Scenarios compiled into the library, in the same text format users write.

#pragma once

#include "hia/scenario.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace hia {

struct BundledScenario {
    std::string_view id;
    std::string_view text;
};

inline const std::vector<BundledScenario>& bundled_scenarios()
{
    static const std::vector<BundledScenario> list = {
        {"fig2_noma", R"(format = 1
id = fig2_noma
description = NOMA sum rate vs SNR under imperfect CSIT, clustered users
variant = noma
n_antennas = 4
layer_sizes = 1, 1, 1, 1, 1, 1, 1, 1
snr_db = 0, 10, 20, 30, 40
kappa = 0.4
aoa = 30
spread_deg = 30
draws = 100
seed = 1
)"},
        {"fig3_nc", R"(format = 1
id = fig3_nc
description = sum secrecy rate vs SNR, non-colluding eavesdroppers
variant = nc
n_antennas = 6
layer_sizes = 2, 2, 2
snr_db = 0, 10, 20, 30, 40
epsilon = 0.01
spread_deg = 30
aoa = uniform
draws = 100
seed = 1
)"},
        {"fig3_c", R"(format = 1
id = fig3_c
description = sum secrecy rate vs SNR, colluding eavesdroppers
variant = c
n_antennas = 6
layer_sizes = 2, 2, 2
snr_db = 0, 10, 20, 30, 40
epsilon = 0.01
spread_deg = 30
aoa = uniform
draws = 100
seed = 1
)"},
        {"fig4_nc", R"(format = 1
id = fig4_nc
description = sum secrecy rate vs number of users, non-colluding
variant = nc
n_antennas = 24
layers = 3
users = 3, 6, 9, 12, 15, 18, 21
snr_db = 40
epsilon = 0.01
spread_deg = 30
aoa = uniform
draws = 100
seed = 1
)"},
        {"fig4_c", R"(format = 1
id = fig4_c
description = sum secrecy rate vs number of users, colluding
variant = c
n_antennas = 24
layers = 3
users = 3, 6, 9, 12, 15, 18, 21
snr_db = 40
epsilon = 0.01
spread_deg = 30
aoa = uniform
draws = 100
seed = 1
)"},
        {"fig5_trace", R"(format = 1
id = fig5_trace
description = per-iteration objective and residual of both secrecy solvers
variant = nc, c
mode = trace
n_antennas = 6
layer_sizes = 3, 2, 1
snr_db = 20
epsilon = 0.01
spread_deg = 30
aoa = uniform
draws = 50
seed = 1
)"},
        {"fig6_pf", R"(format = 1
id = fig6_pf
description = proportional-fair time loop with pathloss, non-colluding
variant = pf-nc
n_antennas = 6
layer_sizes = 3, 2, 1
snr_db = 20
epsilon = 0.01
spread_deg = 30
aoa = uniform
gain = pathloss
distance_min_m = 100
distance_max_m = 500
bandwidth_hz = 10e6
noise_density_dbm_hz = -174
noise_figure_db = 9
pf_delta = 0.2
slots = 50
draws = 20
seed = 1
)"},
        {"fig6_pf_c", R"(format = 1
id = fig6_pf_c
description = proportional-fair time loop with pathloss, colluding
variant = pf-c
n_antennas = 6
layer_sizes = 3, 2, 1
snr_db = 20
epsilon = 0.01
spread_deg = 30
aoa = uniform
gain = pathloss
distance_min_m = 100
distance_max_m = 500
pf_delta = 0.2
slots = 50
draws = 20
seed = 1
)"},
    };
    return list;
}

inline std::optional<Scenario> find_bundled(std::string_view id)
{
    for (const auto& b : bundled_scenarios())
        if (b.id == id)
            return parse_scenario(std::string(b.text), std::string(b.id));
    return std::nullopt;
}

} // namespace hia
