#pragma once

#include "scp/acceptance.hpp"
#include "scp/catalog.hpp"
#include "scp/config.hpp"
#include "scp/correction.hpp"
#include "scp/diagnostics.hpp"
#include "scp/driver.hpp"
#include "scp/errors.hpp"
#include "scp/linalg.hpp"
#include "scp/merit.hpp"
#include "scp/multipliers.hpp"
#include "scp/normal_step.hpp"
#include "scp/problem.hpp"
#include "scp/record.hpp"
#include "scp/sweep.hpp"
#include "scp/tangential.hpp"
#include "scp/trace.hpp"
