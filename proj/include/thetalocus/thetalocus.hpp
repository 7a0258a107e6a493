#pragma once

#include "bundle.hpp"
#include "constructions.hpp"
#include "exact.hpp"
#include "io.hpp"
#include "obstruction.hpp"
#include "search.hpp"
