#pragma once

// Everything except the JSON formats and the command-line driver, which
// need nlohmann_json and CLI11.

#include "fibgen/certificate.hpp"
#include "fibgen/diagram.hpp"
#include "fibgen/diagram_level.hpp"
#include "fibgen/injective.hpp"
#include "fibgen/kan.hpp"
#include "fibgen/postfactor.hpp"
#include "fibgen/random_diagram.hpp"
#include "fibgen/reedy.hpp"
#include "fibgen/reedy_tower.hpp"
