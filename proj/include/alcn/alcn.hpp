#pragma once

#include "alcn/axioms.hpp"
#include "alcn/concepts.hpp"
#include "alcn/defeasible.hpp"
#include "alcn/interpretation.hpp"
#include "alcn/lowering.hpp"
#include "alcn/parser.hpp"
#include "alcn/postulates.hpp"
#include "alcn/printer.hpp"
#include "alcn/report.hpp"
#include "alcn/tableau.hpp"
