#pragma once

#include <string>
#include <vector>

#include "nin/cogwheel.hpp"
#include "nin/dirac.hpp"
#include "nin/state.hpp"
#include "nin/weyl.hpp"

namespace nin {

// All emitters are byte-deterministic: same input, same bytes.

// Header "K M", then one "k l_k" line per site (k = 1..2K in order).
// The parser accepts blank lines, '#' comments, and sites in any order, but
// requires each site exactly once.
std::string to_state_text(const necklace_state& s);
necklace_state parse_state_text(const std::string& text);

// 2K rows x M columns of 0/1, column l+L.
std::string to_bitplane_csv(const necklace_state& s);

// "# pairs=K transverse=M time_step=T" metadata line, "n,k,value" header,
// then one row per snapshot and site.
std::string to_trajectory_csv(const trajectory& t);
trajectory parse_trajectory_csv(const std::string& text);

// Binary P5, one row per snapshot, one column per site, gray = value + L,
// maxval = M - 1 (io_error when M - 1 > 255).
std::string to_spacetime_pgm(const trajectory& t);

// One '+' or '-' per site.
std::string to_chain_text(const spin_chain& c);
spin_chain parse_chain_text(const std::string& text);

// "# half_size=S" metadata line, "n,k,occupation" header, one row per tick
// and site.
std::string to_chain_history_csv(const std::vector<spin_chain>& history);

// "level,k,value" rows for a stack of block fields.
std::string to_block_csv(const std::vector<block_field>& fields);

// "states,time_scale,index,eigenvalue" rows.
std::string to_spectrum_csv(const cogwheel& w,
                            const std::vector<double>& eigenvalues);

// Shortest round-trippable decimal form (%.17g).
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace nin
