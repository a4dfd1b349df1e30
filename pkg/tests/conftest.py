from hypothesis import settings

# numerical routines have uneven runtimes; keep example counts modest
settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")
