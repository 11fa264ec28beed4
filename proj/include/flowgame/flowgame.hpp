#pragma once

#include <flowgame/budget.hpp>
#include <flowgame/dot.hpp>
#include <flowgame/equilibria.hpp>
#include <flowgame/error.hpp>
#include <flowgame/flowopt.hpp>
#include <flowgame/io.hpp>
#include <flowgame/mcsim.hpp>
#include <flowgame/network.hpp>
#include <flowgame/payoff.hpp>
#include <flowgame/rational.hpp>
#include <flowgame/simplex.hpp>
#include <flowgame/verify.hpp>
