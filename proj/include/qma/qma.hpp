#ifndef QMA_QMA_HPP
#define QMA_QMA_HPP

#include "qma/energy.hpp"
#include "qma/error.hpp"
#include "qma/hessian.hpp"
#include "qma/ineq.hpp"
#include "qma/moore.hpp"
#include "qma/quadrature.hpp"
#include "qma/quaternion.hpp"
#include "qma/search.hpp"
#include "qma/specfun.hpp"

#endif  // QMA_QMA_HPP
