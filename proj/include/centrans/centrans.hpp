#pragma once

#include "brute_force.hpp"
#include "corpus.hpp"
#include "dsl.hpp"
#include "finder.hpp"
#include "fixtures.hpp"
#include "lab.hpp"
#include "logic.hpp"
#include "report.hpp"
#include "structure.hpp"
