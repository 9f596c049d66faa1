/** Search page: one query at a time, rendered exactly as the API answered.
 *
 * All similarity logic lives server-side; this module only mirrors API
 * responses into the table (never reordered, dropped, or deduplicated) and
 * turns every result row into the next query.
 */

import { ApiClient, ApiError, Mode, SimilarResponse } from './api.js';
import { prefixMatches } from './autocomplete.js';

export interface UiQueryState {
  symbol: string;
  mode: Mode;
  topK: number;
  pending: boolean;
  lastResponse: SimilarResponse | null;
  lastError: { code: string; message: string } | null;
}

export interface AppHandle {
  root: HTMLElement;
  search(symbol?: string): Promise<void>;
  state(): UiQueryState;
  symbolsLoaded(): Promise<void>;
}

const PAGE = `
  <h1>inversearch</h1>
  <p class="tagline">find instruments that move with &mdash; or against &mdash; a ticker</p>
  <form id="search-form" autocomplete="off">
    <div class="symbol-box">
      <input id="symbol-input" placeholder="ticker, e.g. PBR" spellcheck="false" />
      <ul id="suggestions" hidden></ul>
    </div>
    <span id="mode-toggle">
      <label><input type="radio" name="mode" value="inverse" checked /> inverse</label>
      <label><input type="radio" name="mode" value="direct" /> direct</label>
    </span>
    <label class="top-label">top <input id="top-input" type="number" min="1" max="500" value="20" /></label>
    <button id="search-button" type="submit">Search</button>
  </form>
  <div id="status" hidden></div>
  <table id="results" hidden>
    <thead><tr><th>rank</th><th>symbol</th><th>score</th></tr></thead>
    <tbody></tbody>
  </table>
  <div id="summary" hidden></div>
`;

export function createApp(root: HTMLElement, api: ApiClient): AppHandle {
  root.innerHTML = PAGE;
  const form = root.querySelector('#search-form') as HTMLFormElement;
  const symbolInput = root.querySelector('#symbol-input') as HTMLInputElement;
  const suggestions = root.querySelector('#suggestions') as HTMLUListElement;
  const topInput = root.querySelector('#top-input') as HTMLInputElement;
  const status = root.querySelector('#status') as HTMLDivElement;
  const table = root.querySelector('#results') as HTMLTableElement;
  const tbody = table.querySelector('tbody') as HTMLTableSectionElement;
  const summary = root.querySelector('#summary') as HTMLDivElement;

  const state: UiQueryState = {
    symbol: '',
    mode: 'inverse',
    topK: 20,
    pending: false,
    lastResponse: null,
    lastError: null,
  };

  let symbols: string[] = [];
  let generation = 0;
  let controller: AbortController | null = null;

  const symbolsReady = api
    .fetchSymbols()
    .then((list) => {
      symbols = list;
    })
    .catch(() => {
      symbols = []; // autocomplete degrades; search still works
    });

  function currentMode(): Mode {
    const checked = root.querySelector('input[name="mode"]:checked') as HTMLInputElement | null;
    return checked?.value === 'direct' ? 'direct' : 'inverse';
  }

  function showStatus(text: string, withRetry: boolean): void {
    status.hidden = false;
    status.textContent = text;
    if (withRetry) {
      const retry = document.createElement('button');
      retry.type = 'button';
      retry.id = 'retry-button';
      retry.textContent = 'Retry';
      retry.addEventListener('click', () => void search(state.symbol));
      status.append(' ', retry);
    }
  }

  function clearOutputs(): void {
    status.hidden = true;
    status.textContent = '';
    table.hidden = true;
    tbody.replaceChildren();
    summary.hidden = true;
    summary.textContent = '';
  }

  function renderResponse(response: SimilarResponse): void {
    clearOutputs();
    if (response.results.length === 0) {
      showStatus(`no ${response.mode} co-occurrences recorded for ${response.symbol}`, false);
      return;
    }
    for (const row of response.results) {
      const tr = document.createElement('tr');
      tr.className = 'result-row';
      tr.dataset.symbol = row.symbol;
      const rank = document.createElement('td');
      rank.textContent = String(row.rank);
      const symbol = document.createElement('td');
      symbol.className = 'result-symbol';
      symbol.textContent = row.symbol;
      const score = document.createElement('td');
      score.textContent = String(row.score);
      tr.append(rank, symbol, score);
      tr.addEventListener('click', () => void search(row.symbol));
      tbody.append(tr);
    }
    table.hidden = false;
    summary.hidden = false;
    summary.textContent =
      `${response.mode} matches for ${response.symbol} · ${response.nodes_visited} nodes visited`;
  }

  async function search(rawSymbol?: string): Promise<void> {
    const symbol = (rawSymbol ?? symbolInput.value).trim().toUpperCase();
    if (!symbol) return;
    symbolInput.value = symbol;
    suggestions.hidden = true;
    state.symbol = symbol;
    state.mode = currentMode();
    state.topK = Math.max(1, Number(topInput.value) || 20);
    state.pending = true;

    controller?.abort();
    controller = new AbortController();
    const myGeneration = ++generation;

    clearOutputs();
    showStatus('searching…', false);
    try {
      const response = await api.fetchSimilar(symbol, state.mode, state.topK, controller.signal);
      if (myGeneration !== generation) return; // a newer query superseded this one
      state.pending = false;
      state.lastResponse = response;
      state.lastError = null;
      renderResponse(response);
    } catch (err) {
      if (myGeneration !== generation) return;
      if (err instanceof DOMException && err.name === 'AbortError') return;
      state.pending = false;
      state.lastResponse = null;
      clearOutputs();
      if (err instanceof ApiError) {
        state.lastError = { code: err.code, message: err.message };
        showStatus(
          err.code === 'unknown_symbol' ? `unknown symbol ${symbol}` : err.message,
          false,
        );
      } else {
        state.lastError = { code: 'network', message: String(err) };
        showStatus('network error - the service did not answer', true);
      }
    }
  }

  symbolInput.addEventListener('input', () => {
    const matches = prefixMatches(symbols, symbolInput.value);
    suggestions.replaceChildren(
      ...matches.map((symbol) => {
        const li = document.createElement('li');
        li.textContent = symbol;
        li.addEventListener('click', () => {
          symbolInput.value = symbol;
          suggestions.hidden = true;
          void search(symbol);
        });
        return li;
      }),
    );
    suggestions.hidden = matches.length === 0;
  });

  form.addEventListener('submit', (event) => {
    event.preventDefault();
    void search();
  });

  return {
    root,
    search,
    state: () => ({ ...state }),
    symbolsLoaded: () => symbolsReady,
  };
}
