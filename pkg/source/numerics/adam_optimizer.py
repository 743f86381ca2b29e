import numpy as np

from source.constants import Constants
from source.errors import ContractError


class AdamOptimizer(object):

    def __init__(self, parameters, learning_rate=Constants.LEARNING_RATE, betas=Constants.ADAM_BETAS,
                 epsilon=Constants.ADAM_EPSILON):
        self.parameters = list(parameters)
        self.learning_rate = learning_rate
        self.betas = betas
        self.epsilon = epsilon

    def step(self):
        AdamOptimizer.adam_step(self.parameters, self.learning_rate, self.betas, self.epsilon)

    def zero_grad(self):
        for parameter in self.parameters:
            parameter.zero_grad()

    @staticmethod
    def adam_step(parameters, learning_rate, betas, epsilon):
        parameters = list(parameters)
        for parameter in parameters:
            if parameter.grad is None:
                raise ContractError(f"Parameter {parameter.name} has no gradient; run backward before adam_step")

        beta_one, beta_two = betas
        for parameter in parameters:
            dtype = parameter.data.dtype
            grad = parameter.grad
            parameter.step_count += 1
            step = parameter.step_count

            parameter.first_moment = (beta_one * parameter.first_moment + (1 - beta_one) * grad).astype(dtype)
            parameter.second_moment = (beta_two * parameter.second_moment
                                       + (1 - beta_two) * grad * grad).astype(dtype)

            first_unbiased = parameter.first_moment / (1 - beta_one ** step)
            second_unbiased = parameter.second_moment / (1 - beta_two ** step)
            update = learning_rate * first_unbiased / (np.sqrt(second_unbiased) + epsilon)

            parameter.data = (parameter.data - update).astype(dtype)
            parameter.zero_grad()
