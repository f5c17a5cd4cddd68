#pragma once

#include "comogphog/config.hpp"
#include "comogphog/distmat.hpp"
#include "comogphog/error.hpp"
#include "comogphog/evalstats.hpp"
#include "comogphog/featuredb.hpp"
#include "comogphog/features.hpp"
#include "comogphog/imageops.hpp"
#include "comogphog/scoring.hpp"
#include "comogphog/structure_io.hpp"
