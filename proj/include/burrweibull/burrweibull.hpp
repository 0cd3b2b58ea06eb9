#ifndef BURRWEIBULL_BURRWEIBULL_HPP
#define BURRWEIBULL_BURRWEIBULL_HPP

#include "curves.hpp"
#include "dataset.hpp"
#include "distribution.hpp"
#include "errors.hpp"
#include "estimation.hpp"
#include "moments.hpp"
#include "params.hpp"
#include "quadrature.hpp"
#include "quantile.hpp"
#include "random.hpp"
#include "simulation.hpp"

#endif  // BURRWEIBULL_BURRWEIBULL_HPP
