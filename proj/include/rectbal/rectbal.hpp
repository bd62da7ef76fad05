#pragma once

#include <rectbal/dfa.hpp>
#include <rectbal/error.hpp>
#include <rectbal/exact_quadratic.hpp>
#include <rectbal/fib_balance.hpp>
#include <rectbal/numeration.hpp>
#include <rectbal/parallel.hpp>
#include <rectbal/rectangles.hpp>
#include <rectbal/tm_balance.hpp>
#include <rectbal/trib_balance.hpp>
#include <rectbal/words.hpp>
