#pragma once

#include <burling/bitset.hpp>
#include <burling/builder.hpp>
#include <burling/chromatic.hpp>
#include <burling/detectors.hpp>
#include <burling/graft_ops.hpp>
#include <burling/graph.hpp>
#include <burling/io.hpp>
#include <burling/isomorphism.hpp>
#include <burling/oracle.hpp>
#include <burling/script.hpp>
#include <burling/search.hpp>
#include <burling/witness.hpp>
