#pragma once

#include "posetoam/crossed_product.hpp"
#include "posetoam/gauge_action.hpp"
#include "posetoam/poset.hpp"
#include "posetoam/spectra.hpp"
#include "posetoam/spectral_triple.hpp"
#include "posetoam/types.hpp"
#include "posetoam/verify.hpp"
