#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ergolab/maps.hpp"
#include "ergolab/processes.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/schedule.hpp"

namespace ergolab {

// Deterministic forward pass of one orbit. For dyadic-base maps (doubling,
// tent, skew products) the base coordinate lives in 128-bit fixed point and
// each step shifts in one fresh tape bit: the engine then iterates the exact
// map on the real number whose expansion starts with the seed's bits and
// continues with the tape. Bare double iteration would collapse to 0 after
// 53 steps. The tape is a pure function of the inputs, so identical
// (map, point) inputs give bit-identical orbits on any thread.
class Orbit {
  public:
    Orbit(const MapSpec& map, const Point& p0);

    void advance();
    const Point& state() const { return p_; }
    std::uint64_t time() const { return t_; }

  private:
    MapSpec map_;
    Point p_;
    u128 base_bits_ = 0;
    std::mt19937_64 tape_;
    std::uint64_t tape_word_ = 0;
    int tape_left_ = 0;
    std::uint64_t t_ = 0;

    std::uint64_t next_bit();
    void sync_base();
};

// One pass of sched.n_max() steps; every monitor sees every state in order
// and records at each checkpoint. Traces returned in monitor order.
std::vector<ProcessTrace> iterate_with_checkpoints(
    const MapSpec& map, const Point& p0, const CheckpointSchedule& sched,
    const std::vector<std::shared_ptr<Monitor>>& monitors);

// Random initial state for the map: uniform draws with dyadic rationals and
// fixed points rejected and redrawn.
Point random_point(const MapSpec& map, std::mt19937_64& rng);

} // namespace ergolab
