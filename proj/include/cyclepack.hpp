#pragma once

#include <cyclepack/vertex_set.hpp>
#include <cyclepack/graph.hpp>
#include <cyclepack/io.hpp>
#include <cyclepack/profile.hpp>
#include <cyclepack/random.hpp>
#include <cyclepack/generators.hpp>
#include <cyclepack/matching.hpp>
#include <cyclepack/cycles.hpp>
#include <cyclepack/packing.hpp>
#include <cyclepack/verifier.hpp>
#include <cyclepack/oracle.hpp>
#include <cyclepack/search_state.hpp>
#include <cyclepack/packer.hpp>
