#pragma once

#include "holevo/bounds.hpp"
#include "holevo/campaign.hpp"
#include "holevo/channels.hpp"
#include "holevo/distances.hpp"
#include "holevo/error.hpp"
#include "holevo/information.hpp"
#include "holevo/io.hpp"
#include "holevo/linalg.hpp"
#include "holevo/states.hpp"
