#pragma once

#include "amqc/errors.hpp"
#include "amqc/gate_names.hpp"
#include "amqc/gates.hpp"
#include "amqc/hamiltonian.hpp"
#include "amqc/locequiv.hpp"
#include "amqc/model_k.hpp"
#include "amqc/model_l.hpp"
#include "amqc/qmat.hpp"
#include "amqc/random.hpp"
#include "amqc/schedule.hpp"
#include "amqc/simulator.hpp"
#include "amqc/synth.hpp"
#include "amqc/verify.hpp"
