#pragma once

#include "tubenorm/asymptotics.hpp"
#include "tubenorm/end_cap.hpp"
#include "tubenorm/geometry.hpp"
#include "tubenorm/harness.hpp"
#include "tubenorm/mapped_solver.hpp"
#include "tubenorm/systems.hpp"
