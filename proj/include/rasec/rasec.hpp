#pragma once

#include "rasec/avg_secrecy.hpp"
#include "rasec/bessel.hpp"
#include "rasec/channel.hpp"
#include "rasec/config.hpp"
#include "rasec/csv.hpp"
#include "rasec/errors.hpp"
#include "rasec/figures.hpp"
#include "rasec/geometry.hpp"
#include "rasec/golden_section.hpp"
#include "rasec/los_solver.hpp"
#include "rasec/marcum.hpp"
#include "rasec/outage.hpp"
#include "rasec/parallel.hpp"
#include "rasec/quadrature.hpp"
#include "rasec/random.hpp"
