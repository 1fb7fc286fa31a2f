#pragma once

#include "czlab/crossing.hpp"
#include "czlab/errors.hpp"
#include "czlab/expm.hpp"
#include "czlab/flow.hpp"
#include "czlab/hessian_path.hpp"
#include "czlab/hofer_models.hpp"
#include "czlab/index_theorem.hpp"
#include "czlab/selftest.hpp"
#include "czlab/symplectic.hpp"
