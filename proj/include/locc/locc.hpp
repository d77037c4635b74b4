#pragma once

#include "locc/config.hpp"
#include "locc/copy.hpp"
#include "locc/generators.hpp"
#include "locc/json_io.hpp"
#include "locc/majorization.hpp"
#include "locc/protocol.hpp"
#include "locc/simulator.hpp"
#include "locc/states.hpp"
#include "locc/tensor.hpp"
