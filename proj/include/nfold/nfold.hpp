#pragma once

#include "arith.hpp"
#include "balancer.hpp"
#include "core.hpp"
#include "dag_solver.hpp"
#include "domain_io.hpp"
#include "equitable_coloring.hpp"
#include "io.hpp"
#include "lobbying.hpp"
#include "multistrings.hpp"
#include "oracle.hpp"
#include "reduction.hpp"
#include "steinitz_audit.hpp"
