#pragma once

#include "abelian.hpp"
#include "compile.hpp"
#include "conjugacy.hpp"
#include "error.hpp"
#include "finite_ab.hpp"
#include "flatten.hpp"
#include "graph_analysis.hpp"
#include "h10.hpp"
#include "instance.hpp"
#include "instance_io.hpp"
#include "interpretation.hpp"
#include "linear_system.hpp"
#include "presentation.hpp"
#include "search.hpp"
#include "shadow.hpp"
#include "word.hpp"
