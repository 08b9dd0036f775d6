#ifndef TCS_TCS_HPP
#define TCS_TCS_HPP

#include "tcs/bench.hpp"
#include "tcs/gen.hpp"
#include "tcs/graph.hpp"
#include "tcs/localsearch.hpp"
#include "tcs/metrics.hpp"
#include "tcs/tricount.hpp"
#include "tcs/truss.hpp"
#include "tcs/ttindex.hpp"
#include "tcs/ttsquery.hpp"
#include "tcs/types.hpp"
#include "tcs/verify.hpp"

#endif  // TCS_TCS_HPP
