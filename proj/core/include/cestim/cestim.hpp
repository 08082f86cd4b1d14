#pragma once

#include "cestim/centrality.hpp"
#include "cestim/data.hpp"
#include "cestim/error.hpp"
#include "cestim/estimate.hpp"
#include "cestim/image.hpp"
#include "cestim/log_math.hpp"
#include "cestim/models.hpp"
#include "cestim/residual_distributions.hpp"
#include "cestim/residuals.hpp"
